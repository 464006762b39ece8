#include "npg/estimation.h"

#include <cmath>

namespace npg {

IterationStreams IterationStreams::Derive(std::uint64_t seed,
                                          std::uint64_t iteration,
                                          int num_agents) {
  IterationStreams s{RngStream::Derive(seed, StreamKind::kHorizon, iteration),
                     {},
                     RngStream::Derive(seed, StreamKind::kEnvironment, iteration)};
  s.actions.reserve(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    s.actions.push_back(
        RngStream::Derive(seed, StreamKind::kAction, iteration, i));
  }
  return s;
}

std::vector<int> SampleJointAction(const State& state,
                                   std::span<const ParamSet> views,
                                   PolicyKind kind,
                                   std::span<RngStream> action_streams) {
  const int n = static_cast<int>(views.size());
  std::vector<int> actions(n);
  for (int i = 0; i < n; ++i) {
    actions[i] = SampleAction(i, state, views[i], kind, action_streams[i]);
  }
  return actions;
}

StateAction RolloutPhase1(Environment& env, std::span<const ParamSet> views,
                          PolicyKind kind, std::int64_t t1,
                          IterationStreams& streams) {
  env.Reset(streams.environment);
  std::vector<int> actions =
      SampleJointAction(env.state(), views, kind, streams.actions);
  for (std::int64_t tau = 0; tau < t1; ++tau) {
    env.Step(actions, streams.environment);
    actions = SampleJointAction(env.state(), views, kind, streams.actions);
  }
  return StateAction{env.state(), std::move(actions)};
}

QEstimate EstimateQ(Environment& env, std::span<const int> first_action,
                    std::int64_t t2, std::span<const ParamSet> views,
                    PolicyKind kind, IterationStreams& streams) {
  const double root_gamma = std::sqrt(env.game().discount());
  const int n = env.game().num_agents();
  QEstimate out{std::vector<double>(n, 0.0), {}, {}};
  std::vector<int> actions(first_action.begin(), first_action.end());
  double weight = 1.0;
  for (std::int64_t tau = 0;; ++tau) {
    const std::vector<double> r = env.Step(actions, streams.environment);
    for (int i = 0; i < n; ++i) out.values[i] += weight * r[i];
    if (tau == 0) {
      out.first_rewards = r;
      out.next_state = env.state();
    }
    if (tau == t2) break;
    weight *= root_gamma;
    actions = SampleJointAction(env.state(), views, kind, streams.actions);
  }
  return out;
}

std::vector<double> EstimateV(Environment& env, const State& start,
                              std::int64_t horizon,
                              std::span<const ParamSet> views, PolicyKind kind,
                              IterationStreams& streams) {
  env.Seat(start);
  const std::vector<int> first =
      SampleJointAction(start, views, kind, streams.actions);
  return EstimateQ(env, first, horizon, views, kind, streams).values;
}

GradientEstimate EstimateGradient(Environment& env,
                                  std::span<const ParamSet> views,
                                  PolicyKind kind, EstimatorKind estimator,
                                  IterationStreams& streams) {
  const Game& game = env.game();
  const int n = game.num_agents();
  const double gamma = game.discount();
  const double p_outer = 1.0 - gamma;
  const double p_inner = 1.0 - std::sqrt(gamma);

  GradientEstimate est;
  est.t1 = DrawGeometric(streams.horizon, p_outer);
  est.t2 = DrawGeometric(streams.horizon, p_inner);

  const StateAction sa = RolloutPhase1(env, views, kind, est.t1, streams);
  const QEstimate q =
      EstimateQ(env, sa.actions, est.t2, views, kind, streams);
  est.returns = q.values;

  switch (estimator) {
    case EstimatorKind::kQ:
      est.rhat = q.values;
      break;
    case EstimatorKind::kAdvantage: {
      const std::int64_t h = DrawGeometric(streams.horizon, p_inner);
      est.value_horizons.push_back(h);
      const std::vector<double> v =
          EstimateV(env, sa.state, h, views, kind, streams);
      est.rhat.resize(n);
      for (int i = 0; i < n; ++i) est.rhat[i] = q.values[i] - v[i];
      break;
    }
    case EstimatorKind::kTD: {
      const std::int64_t h_here = DrawGeometric(streams.horizon, p_inner);
      const std::int64_t h_next = DrawGeometric(streams.horizon, p_inner);
      est.value_horizons = {h_here, h_next};
      const std::vector<double> v_here =
          EstimateV(env, sa.state, h_here, views, kind, streams);
      const std::vector<double> v_next =
          EstimateV(env, q.next_state, h_next, views, kind, streams);
      est.rhat.resize(n);
      for (int i = 0; i < n; ++i) {
        est.rhat[i] = q.first_rewards[i] + gamma * v_next[i] - v_here[i];
      }
      break;
    }
  }

  est.per_agent.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> g = JointScore(i, sa.actions, sa.state, views[i], kind);
    const double scale = est.rhat[i] / p_outer;
    for (double& x : g) x *= scale;
    est.per_agent[i] = std::move(g);
  }
  return est;
}

}  // namespace npg
