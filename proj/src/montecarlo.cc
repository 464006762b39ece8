#include "npg/montecarlo.h"

namespace npg {

std::vector<double> GradientSample(const Game& game, const ParamSet& params,
                                   PolicyKind kind, EstimatorKind estimator,
                                   std::uint64_t seed, std::int64_t episode) {
  const int n = game.num_agents();
  const std::vector<ParamSet> views(n, params);
  Environment env(game);
  IterationStreams streams = IterationStreams::Derive(seed, episode, n);
  const GradientEstimate est =
      EstimateGradient(env, views, kind, estimator, streams);
  std::vector<double> flat;
  for (const auto& block : est.per_agent) {
    flat.insert(flat.end(), block.begin(), block.end());
  }
  return flat;
}

Moments GradientMoments(const Game& game, const ParamSet& params,
                        PolicyKind kind, EstimatorKind estimator,
                        std::int64_t episodes, std::uint64_t seed, int jobs) {
  return MonteCarloMoments(
      episodes,
      [&](std::int64_t e) {
        return GradientSample(game, params, kind, estimator, seed, e);
      },
      jobs);
}

Moments GradientMomentsSerial(const Game& game, const ParamSet& params,
                              PolicyKind kind, EstimatorKind estimator,
                              std::int64_t episodes, std::uint64_t seed) {
  return MonteCarloMomentsSerial(episodes, [&](std::int64_t e) {
    return GradientSample(game, params, kind, estimator, seed, e);
  });
}

}  // namespace npg
