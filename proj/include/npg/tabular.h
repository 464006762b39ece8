#ifndef NPG_TABULAR_H_
#define NPG_TABULAR_H_

#include <span>
#include <vector>

#include "npg/game.h"

namespace npg {

// Finite Markov game given by explicit tables. State s is reported with
// levels `features[s]` and period s. Joint actions are indexed as
// sum_i a_i K^i. Used as a small testbed with exactly computable values
// (a single-state instance is a repeated bandit).
class TabularGame final : public Game {
 public:
  struct Tables {
    int num_agents = 2;
    int num_actions = 2;
    double discount = 0.9;
    std::vector<std::vector<double>> features;  // [state][agent]
    std::vector<double> initial;                // [state]
    // transition[s][joint][s'] and reward[s][joint][agent]
    std::vector<std::vector<std::vector<double>>> transition;
    std::vector<std::vector<std::vector<double>>> reward;
  };

  explicit TabularGame(Tables tables);

  const Tables& tables() const { return t_; }
  int num_states() const { return static_cast<int>(t_.features.size()); }
  int num_joint_actions() const { return joint_count_; }
  int JointIndex(std::span<const int> actions) const;
  std::vector<int> JointActions(int index) const;

  int num_agents() const override { return t_.num_agents; }
  int num_actions() const override { return t_.num_actions; }
  double discount() const override { return t_.discount; }
  double reward_bound() const override { return bound_; }
  State InitialState(RngStream& rng) const override;
  Transition Step(const State& state, std::span<const int> actions,
                  RngStream& rng) const override;

  State StateAt(int s) const;

 private:
  int Sample(std::span<const double> probs, RngStream& rng) const;

  Tables t_;
  int joint_count_ = 1;
  double bound_ = 0.0;
};

}  // namespace npg

#endif  // NPG_TABULAR_H_
