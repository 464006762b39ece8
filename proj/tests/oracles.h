// Test-only oracles. Everything here is computed from the game tables and
// policy probabilities by enumeration; none of it goes through the
// estimators or the closed-form score functions.
#ifndef NPG_TESTS_ORACLES_H_
#define NPG_TESTS_ORACLES_H_

#include <cmath>
#include <vector>

#include "npg/policy.h"
#include "npg/tabular.h"

namespace npg::oracle {

// Two agents, two actions, one state: a repeated bandit.
inline TabularGame MakeBandit(double discount = 0.9) {
  TabularGame::Tables t;
  t.num_agents = 2;
  t.num_actions = 2;
  t.discount = discount;
  t.features = {{0.5, -0.7}};
  t.initial = {1.0};
  t.transition = {{{1.0}, {1.0}, {1.0}, {1.0}}};
  // joint index = a0 + 2 a1
  t.reward = {{{1.0, 0.2}, {0.3, 1.0}, {-0.5, 0.4}, {0.8, -1.0}}};
  return TabularGame(t);
}

// Two agents, two actions, two states with action-dependent transitions and
// distinct per-agent rewards.
inline TabularGame MakeChain(double discount = 0.9) {
  TabularGame::Tables t;
  t.num_agents = 2;
  t.num_actions = 2;
  t.discount = discount;
  t.features = {{1.0, -0.5}, {0.3, 0.8}};
  t.initial = {0.6, 0.4};
  const double up[2][4] = {{0.2, 0.7, 0.5, 0.9}, {0.6, 0.3, 0.8, 0.1}};
  t.transition.resize(2);
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 4; ++a) t.transition[s].push_back({1 - up[s][a], up[s][a]});
  }
  t.reward = {{{1.0, 0.5}, {0.0, 1.0}, {0.5, -0.5}, {-1.0, 0.2}},
              {{0.3, 0.0}, {1.2, -0.4}, {-0.6, 0.9}, {0.8, 0.8}}};
  return TabularGame(t);
}

inline TabularGame MakeZeroReward(int agents = 3, int actions = 3) {
  TabularGame::Tables t;
  t.num_agents = agents;
  t.num_actions = actions;
  t.discount = 0.9;
  t.features = {std::vector<double>(agents, 0.4),
                std::vector<double>(agents, -0.3)};
  t.initial = {0.5, 0.5};
  int joint = 1;
  for (int i = 0; i < agents; ++i) joint *= actions;
  t.transition.assign(2, std::vector<std::vector<double>>(joint, {0.3, 0.7}));
  t.reward.assign(
      2, std::vector<std::vector<double>>(joint, std::vector<double>(agents, 0.0)));
  return TabularGame(t);
}

// Joint action probabilities Pi(a | s) with every agent using `params`.
inline std::vector<double> JointProbs(const TabularGame& g, int s,
                                      const ParamSet& params, PolicyKind kind) {
  const State state = g.StateAt(s);
  std::vector<std::vector<double>> p;
  for (int i = 0; i < g.num_agents(); ++i) {
    p.push_back(PolicyProbs(i, state, params, kind));
  }
  std::vector<double> joint(g.num_joint_actions());
  for (int a = 0; a < g.num_joint_actions(); ++a) {
    const std::vector<int> acts = g.JointActions(a);
    double prob = 1.0;
    for (int i = 0; i < g.num_agents(); ++i) prob *= p[i][acts[i]];
    joint[a] = prob;
  }
  return joint;
}

struct ExactTabular {
  std::vector<std::vector<double>> v;               // [s][agent]
  std::vector<std::vector<std::vector<double>>> q;  // [s][joint][agent]
  std::vector<double> occupancy;  // P(s_T1 = s), T1 ~ Geom(1 - gamma)
  std::vector<double> utility;    // u_i = sum_s rho(s) V_i(s)
};

// Values by truncated enumeration: V = sum_{t<H} gamma^t P_pi^t r_pi with H
// chosen so that the tail is below machine precision.
inline ExactTabular SolveTabular(const TabularGame& g, const ParamSet& params,
                                 PolicyKind kind) {
  const int S = g.num_states(), A = g.num_joint_actions(), N = g.num_agents();
  const double gamma = g.discount();
  const auto& tab = g.tables();
  std::vector<std::vector<double>> pi(S), P(S, std::vector<double>(S, 0.0)),
      r(S, std::vector<double>(N, 0.0));
  for (int s = 0; s < S; ++s) {
    pi[s] = JointProbs(g, s, params, kind);
    for (int a = 0; a < A; ++a) {
      for (int s2 = 0; s2 < S; ++s2) P[s][s2] += pi[s][a] * tab.transition[s][a][s2];
      for (int i = 0; i < N; ++i) r[s][i] += pi[s][a] * tab.reward[s][a][i];
    }
  }
  const double bound = std::max(g.reward_bound(), 1e-300);
  int horizon = 1;
  while (std::pow(gamma, horizon) * bound / (1 - gamma) > 1e-17) ++horizon;

  ExactTabular out;
  out.v.assign(S, std::vector<double>(N, 0.0));
  out.occupancy.assign(S, 0.0);
  // m[s][s2] = (P^t)[s][s2]; dist = rho P^t
  std::vector<std::vector<double>> m(S, std::vector<double>(S, 0.0));
  for (int s = 0; s < S; ++s) m[s][s] = 1.0;
  std::vector<double> dist = tab.initial;
  double w = 1.0;
  for (int t = 0; t < horizon; ++t) {
    for (int s = 0; s < S; ++s) {
      for (int s2 = 0; s2 < S; ++s2) {
        for (int i = 0; i < N; ++i) out.v[s][i] += w * m[s][s2] * r[s2][i];
      }
      out.occupancy[s] += (1 - gamma) * w * dist[s];
    }
    std::vector<std::vector<double>> next(S, std::vector<double>(S, 0.0));
    std::vector<double> next_dist(S, 0.0);
    for (int s = 0; s < S; ++s) {
      for (int k = 0; k < S; ++k) {
        for (int s2 = 0; s2 < S; ++s2) next[s][s2] += m[s][k] * P[k][s2];
        next_dist[k] += dist[s] * P[s][k];
      }
    }
    m = next;
    dist = next_dist;
    w *= gamma;
  }
  out.q.assign(S, std::vector<std::vector<double>>(A, std::vector<double>(N)));
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      for (int i = 0; i < N; ++i) {
        double cont = 0.0;
        for (int s2 = 0; s2 < S; ++s2) cont += tab.transition[s][a][s2] * out.v[s2][i];
        out.q[s][a][i] = tab.reward[s][a][i] + gamma * cont;
      }
    }
  }
  out.utility.assign(N, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int i = 0; i < N; ++i) out.utility[i] += tab.initial[s] * out.v[s][i];
  }
  return out;
}

// grad_{theta_i} u_i for every agent i, concatenated, by central finite
// differences of the exact utility.
inline std::vector<double> ExactGradientFD(const TabularGame& g,
                                           const ParamSet& params,
                                           PolicyKind kind,
                                           double step = 1e-5) {
  std::vector<double> grad;
  for (int i = 0; i < g.num_agents(); ++i) {
    for (int m = 0; m < params[i].size(); ++m) {
      ParamSet plus = params, minus = params;
      plus[i].flat()[m] += step;
      minus[i].flat()[m] -= step;
      grad.push_back((SolveTabular(g, plus, kind).utility[i] -
                      SolveTabular(g, minus, kind).utility[i]) /
                     (2 * step));
    }
  }
  return grad;
}

// Analytic softmax-bandit gradient, independent policies:
// d/d theta_i(k, .) E[r_i] / (1 - gamma), with
// d pi_i(a_i) / d theta_i(k, 0) = pi_i(a_i) (1{a_i = k} - pi_i(k)).
inline std::vector<double> BanditGradient(const TabularGame& g,
                                          const ParamSet& params) {
  const int N = g.num_agents(), K = g.num_actions();
  const State s = g.StateAt(0);
  std::vector<std::vector<double>> pi(N);
  for (int i = 0; i < N; ++i) {
    std::vector<double> z(K);
    double total = 0.0;
    for (int k = 0; k < K; ++k) total += z[k] = std::exp(params[i].logit(k, s.levels[i]));
    for (int k = 0; k < K; ++k) z[k] /= total;
    pi[i] = z;
  }
  std::vector<double> grad;
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < K; ++k) {
      double d = 0.0;
      for (int a = 0; a < g.num_joint_actions(); ++a) {
        const std::vector<int> acts = g.JointActions(a);
        double prob = 1.0;
        for (int j = 0; j < N; ++j) prob *= pi[j][acts[j]];
        d += prob * g.tables().reward[0][a][i] *
             ((acts[i] == k ? 1.0 : 0.0) - pi[i][k]);
      }
      d /= 1 - g.discount();
      grad.push_back(d);
      grad.push_back(d * s.levels[i]);
    }
  }
  return grad;
}

inline ParamSet FixedParams(int agents, int actions, double scale,
                            std::uint64_t seed) {
  return InitParams(agents, actions, scale, seed);
}

}  // namespace npg::oracle

#endif  // NPG_TESTS_ORACLES_H_
