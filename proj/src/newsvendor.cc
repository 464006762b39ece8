#include "npg/newsvendor.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace npg {

void NewsvendorConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("newsvendor: " + what);
  };
  if (n_agents < 2) fail("n_agents must be >= 2");
  if (!(demand > 0.0) || !std::isfinite(demand)) fail("demand must be > 0");
  if (!(cost_opportunity >= 0.0)) fail("cost_opportunity must be >= 0");
  if (!(cost_storage >= 0.0)) fail("cost_storage must be >= 0");
  if (!(discount > 0.0 && discount < 1.0)) fail("discount must lie in (0, 1)");
  if (!(initial_inventory >= 0.0) || !std::isfinite(initial_inventory)) {
    fail("initial_inventory must be >= 0");
  }
}

int MatchingSellers(const State& state, std::span<const int> actions) {
  return static_cast<int>(std::count(actions.begin(), actions.end(),
                                     static_cast<int>(state.period)));
}

std::vector<double> NewsvendorReward(const State& state,
                                     std::span<const int> actions,
                                     const NewsvendorConfig& cfg) {
  const double n = cfg.n_agents;
  const int matching = MatchingSellers(state, actions);
  const double stock =
      std::accumulate(state.levels.begin(), state.levels.end(), 0.0);
  const double r =
      -cfg.cost_opportunity / n * std::abs(matching * cfg.demand - cfg.demand) -
      cfg.cost_storage / n * stock;
  return std::vector<double>(cfg.n_agents, r);
}

State NewsvendorTransition(const State& state, std::span<const int> actions,
                           const NewsvendorConfig& cfg) {
  State next = state;
  const int matching = MatchingSellers(state, actions);
  if (matching > 0) {
    const double share = cfg.demand / matching;
    for (int i = 0; i < cfg.n_agents; ++i) {
      if (actions[i] == state.period) {
        next.levels[i] = std::max(cfg.demand, state.levels[i]) - share;
      }
    }
  }
  next.period = (state.period + 1) % cfg.n_agents;
  return next;
}

Newsvendor::Newsvendor(NewsvendorConfig cfg) : cfg_(cfg) { cfg_.Validate(); }

double Newsvendor::reward_bound() const {
  const double n = cfg_.n_agents;
  const double mismatch =
      std::max((n - 1.0) * cfg_.demand, cfg_.demand) / n;
  return cfg_.cost_opportunity * mismatch +
         cfg_.cost_storage * std::max(cfg_.demand, cfg_.initial_inventory);
}

State Newsvendor::InitialState(RngStream& /*rng*/) const {
  return State{std::vector<double>(cfg_.n_agents, cfg_.initial_inventory), 0};
}

Transition Newsvendor::Step(const State& state, std::span<const int> actions,
                            RngStream& /*rng*/) const {
  return Transition{NewsvendorTransition(state, actions, cfg_),
                    NewsvendorReward(state, actions, cfg_)};
}

namespace {

using StateKey = std::pair<std::int64_t, std::vector<double>>;

// Calls fn(joint_action, probability) for every joint action with nonzero
// probability under the given per-agent distributions.
template <typename Fn>
void ForEachJointAction(const std::vector<std::vector<double>>& probs,
                        Fn&& fn) {
  const int n = static_cast<int>(probs.size());
  std::vector<int> action(n, 0);
  while (true) {
    double p = 1.0;
    for (int i = 0; i < n && p > 0.0; ++i) p *= probs[i][action[i]];
    if (p > 0.0) fn(action, p);
    int i = 0;
    while (i < n && ++action[i] == static_cast<int>(probs[i].size())) {
      action[i] = 0;
      ++i;
    }
    if (i == n) return;
  }
}

struct Edge {
  std::size_t next;
  double prob;
  double reward;  // identical across agents
};

}  // namespace

ExactValue NewsvendorExactValue(const NewsvendorConfig& cfg,
                                const JointPolicy& policy, double tol,
                                std::size_t state_cap) {
  cfg.Validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");

  ExactValue out;
  std::map<StateKey, std::size_t> index;
  std::vector<std::vector<Edge>> edges;

  auto intern = [&](const State& s) {
    auto [it, inserted] =
        index.try_emplace(StateKey{s.period, s.levels}, out.states.size());
    if (inserted) {
      if (out.states.size() >= state_cap) {
        throw std::length_error("reachable state set exceeds cap of " +
                                std::to_string(state_cap));
      }
      out.states.push_back(s);
      edges.emplace_back();
    }
    return it->second;
  };

  intern(State{std::vector<double>(cfg.n_agents, cfg.initial_inventory), 0});
  for (std::size_t s = 0; s < out.states.size(); ++s) {
    const State current = out.states[s];
    std::vector<Edge> local;
    ForEachJointAction(policy(current), [&](const std::vector<int>& a,
                                            double p) {
      const double r = NewsvendorReward(current, a, cfg).front();
      const std::size_t next = intern(NewsvendorTransition(current, a, cfg));
      local.push_back({next, p, r});
    });
    edges[s] = std::move(local);
  }

  const std::size_t n_states = out.states.size();
  std::vector<double> v(n_states, 0.0), v_next(n_states, 0.0);
  const double gamma = cfg.discount;
  while (true) {
    double diff = 0.0;
    for (std::size_t s = 0; s < n_states; ++s) {
      double acc = 0.0;
      for (const Edge& e : edges[s]) acc += e.prob * (e.reward + gamma * v[e.next]);
      diff = std::max(diff, std::abs(acc - v[s]));
      v_next[s] = acc;
    }
    v.swap(v_next);
    ++out.sweeps;
    if (diff < tol) break;
  }
  out.values.reserve(n_states);
  for (double x : v) out.values.emplace_back(cfg.n_agents, x);
  return out;
}

}  // namespace npg
