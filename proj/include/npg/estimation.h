#ifndef NPG_ESTIMATION_H_
#define NPG_ESTIMATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "npg/game.h"
#include "npg/policy.h"
#include "npg/rng.h"

namespace npg {

enum class EstimatorKind {
  kQ,          // R = Q
  kAdvantage,  // R = Q - V(s)
  kTD,         // R = r + gamma V(s') - V(s)
};

// Random streams consumed by one gradient-estimation round. The horizon
// stream is common to every agent so all of them act on the same (T1, T2).
struct IterationStreams {
  RngStream horizon;
  std::vector<RngStream> actions;  // one per agent
  RngStream environment;

  static IterationStreams Derive(std::uint64_t seed, std::uint64_t iteration,
                                 int num_agents);
};

struct StateAction {
  State state;
  std::vector<int> actions;
};

struct QEstimate {
  std::vector<double> values;  // per agent
  std::vector<double> first_rewards;  // r(s, a) of the first transition
  State next_state;  // realized state after the first transition
};

struct GradientEstimate {
  std::vector<std::vector<double>> per_agent;  // agent i's block, length 2K
  std::vector<double> rhat;                    // estimator value per agent
  std::vector<double> returns;                 // Q-hat per agent
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::vector<std::int64_t> value_horizons;    // extra V-hat horizons
};

// Each agent i samples its own action from its view views[i].
std::vector<int> SampleJointAction(const State& state,
                                   std::span<const ParamSet> views,
                                   PolicyKind kind,
                                   std::span<RngStream> action_streams);

// Resets the environment and plays `t1` transitions. Returns (s_T1, a_T1);
// with t1 = 0 that is the initial state and the actions sampled there. The
// environment is left seated at s_T1.
StateAction RolloutPhase1(Environment& env, std::span<const ParamSet> views,
                          PolicyKind kind, std::int64_t t1,
                          IterationStreams& streams);

// sum_{tau=0}^{t2} gamma^{tau/2} r(s_tau, a_tau) starting from the current
// environment state and the given first joint action.
QEstimate EstimateQ(Environment& env, std::span<const int> first_action,
                    std::int64_t t2, std::span<const ParamSet> views,
                    PolicyKind kind, IterationStreams& streams);

// Seats the environment at `start`, samples a fresh joint action there and
// accumulates gamma^{tau/2}-weighted rewards over `horizon` further steps.
std::vector<double> EstimateV(Environment& env, const State& start,
                              std::int64_t horizon,
                              std::span<const ParamSet> views, PolicyKind kind,
                              IterationStreams& streams);

// One round of two-episode gradient estimation. Horizons drawn from the
// shared stream, in order: T1 ~ Geom(1-gamma), T2 ~ Geom(1-sqrt(gamma)),
// then one Geom(1-sqrt(gamma)) per auxiliary V-hat rollout (one for the
// advantage, two for TD). Returns R_i / (1 - gamma) * sum_n grad_i log pi_n,
// with every policy evaluated under agent i's view.
GradientEstimate EstimateGradient(Environment& env,
                                  std::span<const ParamSet> views,
                                  PolicyKind kind, EstimatorKind estimator,
                                  IterationStreams& streams);

}  // namespace npg

#endif  // NPG_ESTIMATION_H_
