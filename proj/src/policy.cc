#include "npg/policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace npg {

double MellowMax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mellow-max of empty input");
  const double peak = *std::max_element(values.begin(), values.end());
  double acc = 0.0;
  for (double x : values) acc += std::exp(x - peak);
  return peak + std::log(acc / static_cast<double>(values.size()));
}

namespace {

// Logits z_agent(k). For the networked kind, the mellow-max coupling term is
// taken over j != agent with each x_j evaluated at its own level s_j.
void Logits(int agent, const State& state, const ParamSet& view,
            PolicyKind kind, std::vector<double>& out) {
  const int n = static_cast<int>(view.size());
  const AgentParams& own = view[agent];
  const int k_count = own.num_actions();
  out.resize(k_count);
  std::vector<double> others;
  if (kind == PolicyKind::kNetworked) others.reserve(n - 1);
  for (int k = 0; k < k_count; ++k) {
    double z = own.logit(k, state.levels[agent]);
    if (kind == PolicyKind::kNetworked) {
      others.clear();
      for (int j = 0; j < n; ++j) {
        if (j != agent) others.push_back(view[j].logit(k, state.levels[j]));
      }
      z -= MellowMax(others);
    }
    out[k] = z;
  }
}

void SoftmaxInPlace(std::vector<double>& z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (double& v : z) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : z) v /= total;
}

}  // namespace

std::vector<double> PolicyProbs(int agent, const State& state,
                                const ParamSet& view, PolicyKind kind) {
  std::vector<double> p;
  Logits(agent, state, view, kind, p);
  SoftmaxInPlace(p);
  return p;
}

int SampleFromProbs(std::span<const double> probs, RngStream& stream) {
  const double u = stream.Uniform();
  double cumulative = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    cumulative += probs[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  // Rounding left the total slightly below u; take the last action with mass.
  for (std::size_t k = probs.size(); k-- > 0;) {
    if (probs[k] > 0.0) return static_cast<int>(k);
  }
  return static_cast<int>(probs.size()) - 1;
}

int SampleAction(int agent, const State& state, const ParamSet& view,
                 PolicyKind kind, RngStream& stream) {
  return SampleFromProbs(PolicyProbs(agent, state, view, kind), stream);
}

std::vector<double> ScoreFunction(int wrt, int owner, int action,
                                  const State& state, const ParamSet& view,
                                  PolicyKind kind) {
  const int k_count = view[wrt].num_actions();
  std::vector<double> grad(2 * k_count, 0.0);
  const double level = state.levels[wrt];

  if (owner == wrt) {
    const std::vector<double> p = PolicyProbs(owner, state, view, kind);
    for (int k = 0; k < k_count; ++k) {
      const double g = (k == action ? 1.0 : 0.0) - p[k];
      grad[2 * k] = g;
      grad[2 * k + 1] = g * level;
    }
    return grad;
  }
  if (kind == PolicyKind::kIndependent) return grad;

  // d z_owner(k) / d x_wrt(k) = -w(k), w the softmax weight of wrt among
  // the agents j != owner.
  const int n = static_cast<int>(view.size());
  const std::vector<double> p = PolicyProbs(owner, state, view, kind);
  for (int k = 0; k < k_count; ++k) {
    double peak = -HUGE_VAL;
    for (int j = 0; j < n; ++j) {
      if (j != owner) peak = std::max(peak, view[j].logit(k, state.levels[j]));
    }
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != owner) total += std::exp(view[j].logit(k, state.levels[j]) - peak);
    }
    const double w = std::exp(view[wrt].logit(k, level) - peak) / total;
    const double g = -((k == action ? 1.0 : 0.0) - p[k]) * w;
    grad[2 * k] = g;
    grad[2 * k + 1] = g * level;
  }
  return grad;
}

std::vector<double> JointScore(int wrt, std::span<const int> actions,
                               const State& state, const ParamSet& view,
                               PolicyKind kind) {
  const int n = static_cast<int>(view.size());
  std::vector<double> total(view[wrt].size(), 0.0);
  for (int owner = 0; owner < n; ++owner) {
    if (kind == PolicyKind::kIndependent && owner != wrt) continue;
    const std::vector<double> g =
        ScoreFunction(wrt, owner, actions[owner], state, view, kind);
    for (std::size_t m = 0; m < total.size(); ++m) total[m] += g[m];
  }
  return total;
}

ParamSet InitParams(int num_agents, int num_actions, double stddev,
                    std::uint64_t seed) {
  ParamSet params;
  params.reserve(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    RngStream rng = RngStream::Derive(seed, StreamKind::kInit, i);
    AgentParams p(num_actions);
    for (double& v : p.flat()) v = rng.Normal(0.0, stddev);
    params.push_back(std::move(p));
  }
  return params;
}

}  // namespace npg
