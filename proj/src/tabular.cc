#include "npg/tabular.h"

#include <cmath>
#include <stdexcept>

namespace npg {

TabularGame::TabularGame(Tables tables) : t_(std::move(tables)) {
  if (t_.num_agents < 1 || t_.num_actions < 1) {
    throw std::invalid_argument("tabular game needs agents and actions");
  }
  if (!(t_.discount > 0.0 && t_.discount < 1.0)) {
    throw std::invalid_argument("discount must lie in (0, 1)");
  }
  for (int i = 0; i < t_.num_agents; ++i) joint_count_ *= t_.num_actions;
  const std::size_t states = t_.features.size();
  if (states == 0 || t_.initial.size() != states ||
      t_.transition.size() != states || t_.reward.size() != states) {
    throw std::invalid_argument("tabular game tables disagree on state count");
  }
  for (std::size_t s = 0; s < states; ++s) {
    if (t_.features[s].size() != static_cast<std::size_t>(t_.num_agents) ||
        t_.transition[s].size() != static_cast<std::size_t>(joint_count_) ||
        t_.reward[s].size() != static_cast<std::size_t>(joint_count_)) {
      throw std::invalid_argument("tabular game table has wrong shape");
    }
    for (int a = 0; a < joint_count_; ++a) {
      if (t_.transition[s][a].size() != states ||
          t_.reward[s][a].size() != static_cast<std::size_t>(t_.num_agents)) {
        throw std::invalid_argument("tabular game row has wrong shape");
      }
      for (double r : t_.reward[s][a]) bound_ = std::max(bound_, std::abs(r));
    }
  }
}

int TabularGame::JointIndex(std::span<const int> actions) const {
  int index = 0;
  for (int i = t_.num_agents - 1; i >= 0; --i) {
    index = index * t_.num_actions + actions[i];
  }
  return index;
}

std::vector<int> TabularGame::JointActions(int index) const {
  std::vector<int> a(t_.num_agents);
  for (int i = 0; i < t_.num_agents; ++i) {
    a[i] = index % t_.num_actions;
    index /= t_.num_actions;
  }
  return a;
}

State TabularGame::StateAt(int s) const { return State{t_.features[s], s}; }

int TabularGame::Sample(std::span<const double> probs, RngStream& rng) const {
  if (probs.size() == 1) return 0;
  const double u = rng.Uniform();
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    cumulative += probs[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  return static_cast<int>(probs.size()) - 1;
}

State TabularGame::InitialState(RngStream& rng) const {
  return StateAt(Sample(t_.initial, rng));
}

Transition TabularGame::Step(const State& state, std::span<const int> actions,
                             RngStream& rng) const {
  const int s = static_cast<int>(state.period);
  const int a = JointIndex(actions);
  return Transition{StateAt(Sample(t_.transition[s][a], rng)),
                    t_.reward[s][a]};
}

}  // namespace npg
