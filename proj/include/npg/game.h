#ifndef NPG_GAME_H_
#define NPG_GAME_H_

#include <cstdint>
#include <span>
#include <vector>

#include "npg/rng.h"

namespace npg {

// Joint state of a Markov game. `levels` holds one scalar feature per agent
// (the inventory in the newsvendor game); `period` is any discrete phase the
// environment keeps in its own state so that transitions stay Markov.
struct State {
  std::vector<double> levels;
  std::int64_t period = 0;

  friend bool operator==(const State&, const State&) = default;
};

struct Transition {
  State next;
  std::vector<double> rewards;  // one entry per agent
};

// Markov game contract. Implementations are immutable and therefore safe to
// share across threads; all mutable state lives in `State` values.
class Game {
 public:
  virtual ~Game() = default;

  virtual int num_agents() const = 0;
  virtual int num_actions() const = 0;
  virtual double discount() const = 0;
  // Upper bound R on |r_i(s, a)| over every reachable (s, a).
  virtual double reward_bound() const = 0;

  // Draw from the initial distribution.
  virtual State InitialState(RngStream& rng) const = 0;
  // Actions must already be validated; see Environment::Step.
  virtual Transition Step(const State& state, std::span<const int> actions,
                          RngStream& rng) const = 0;
};

// Single-owner simulator around a Game: holds the current state and the
// period counter since the last reset. Seat() restores a snapshot.
class Environment {
 public:
  explicit Environment(const Game& game) : game_(&game) {}

  const Game& game() const { return *game_; }
  const State& state() const { return state_; }
  std::int64_t clock() const { return clock_; }

  const State& Reset(RngStream& rng);
  void Seat(const State& state);
  // Advances one period. Throws std::out_of_range for an action outside
  // [0, K) or a joint action of the wrong length.
  std::vector<double> Step(std::span<const int> actions, RngStream& rng);

 private:
  const Game* game_;
  State state_;
  std::int64_t clock_ = 0;
};

}  // namespace npg

#endif  // NPG_GAME_H_
