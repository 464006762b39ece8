#include "npg/game.h"

#include <stdexcept>
#include <string>
#include <utility>

namespace npg {

const State& Environment::Reset(RngStream& rng) {
  state_ = game_->InitialState(rng);
  clock_ = 0;
  return state_;
}

void Environment::Seat(const State& state) {
  state_ = state;
  clock_ = 0;
}

std::vector<double> Environment::Step(std::span<const int> actions,
                                      RngStream& rng) {
  const int n = game_->num_agents();
  const int k = game_->num_actions();
  if (static_cast<int>(actions.size()) != n) {
    throw std::out_of_range("joint action has " +
                            std::to_string(actions.size()) +
                            " entries, expected " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (actions[i] < 0 || actions[i] >= k) {
      throw std::out_of_range("action " + std::to_string(actions[i]) +
                              " of agent " + std::to_string(i) +
                              " outside [0, " + std::to_string(k) + ")");
    }
  }
  if (static_cast<int>(state_.levels.size()) != n) {
    throw std::logic_error("environment stepped before Reset or Seat");
  }
  Transition tr = game_->Step(state_, actions, rng);
  state_ = std::move(tr.next);
  ++clock_;
  return std::move(tr.rewards);
}

}  // namespace npg
