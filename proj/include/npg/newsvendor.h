#ifndef NPG_NEWSVENDOR_H_
#define NPG_NEWSVENDOR_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "npg/game.h"

namespace npg {

// Multi-agent newsvendor: N vendors choose the period (action k in [0, N))
// in which they supply; demand D arrives every period and is met by the
// vendors whose action equals t mod N. Rewards are identical across agents.
struct NewsvendorConfig {
  int n_agents = 5;
  double demand = 1.0;
  double cost_opportunity = 0.3;
  double cost_storage = 0.1;
  double discount = 0.95;
  double initial_inventory = 1.0;

  // Throws std::invalid_argument on out-of-range fields.
  void Validate() const;
};

// Number of agents whose action matches the current period.
int MatchingSellers(const State& state, std::span<const int> actions);

// r = -c_o/N |M D - D| - c_s/N sum_n s_n, returned once per agent.
std::vector<double> NewsvendorReward(const State& state,
                                     std::span<const int> actions,
                                     const NewsvendorConfig& cfg);

// Matching agents: s' = max(D, s) - D/M. Others keep their inventory. The
// period advances to (t + 1) mod N.
State NewsvendorTransition(const State& state, std::span<const int> actions,
                           const NewsvendorConfig& cfg);

class Newsvendor final : public Game {
 public:
  explicit Newsvendor(NewsvendorConfig cfg);

  const NewsvendorConfig& config() const { return cfg_; }

  int num_agents() const override { return cfg_.n_agents; }
  int num_actions() const override { return cfg_.n_agents; }
  double discount() const override { return cfg_.discount; }
  double reward_bound() const override;

  State InitialState(RngStream& rng) const override;
  Transition Step(const State& state, std::span<const int> actions,
                  RngStream& rng) const override;

 private:
  NewsvendorConfig cfg_;
};

// Stationary joint policy: per-agent action distributions at a state.
using JointPolicy =
    std::function<std::vector<std::vector<double>>(const State&)>;

struct ExactValue {
  std::vector<State> states;                // reachable set, states[0] = s0
  std::vector<std::vector<double>> values;  // values[s][i]
  int sweeps = 0;

  const std::vector<double>& initial() const { return values.front(); }
};

// Exact discounted value of a stationary joint policy. Enumerates the states
// reachable from s0 under joint actions with positive probability, then runs
// value iteration until successive sweeps differ by less than `tol` in the
// sup norm. Throws std::length_error when more than `state_cap` states are
// reachable.
ExactValue NewsvendorExactValue(const NewsvendorConfig& cfg,
                                const JointPolicy& policy, double tol,
                                std::size_t state_cap = 200000);

}  // namespace npg

#endif  // NPG_NEWSVENDOR_H_
