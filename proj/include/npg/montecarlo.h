#ifndef NPG_MONTECARLO_H_
#define NPG_MONTECARLO_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "npg/estimation.h"
#include "npg/game.h"
#include "npg/policy.h"

namespace npg {

// Per-coordinate sample mean and standard error of the mean.
struct Moments {
  std::int64_t samples = 0;
  std::vector<double> mean;
  std::vector<double> std_error;
};

namespace internal {

// Welford accumulator with Chan's pairwise merge.
struct Accumulator {
  std::int64_t n = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  void Add(const std::vector<double>& x) {
    if (mean.empty()) {
      mean.assign(x.size(), 0.0);
      m2.assign(x.size(), 0.0);
    }
    ++n;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double d = x[c] - mean[c];
      mean[c] += d / static_cast<double>(n);
      m2[c] += d * (x[c] - mean[c]);
    }
  }

  void Merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double total = na + nb;
    for (std::size_t c = 0; c < mean.size(); ++c) {
      const double d = o.mean[c] - mean[c];
      mean[c] += d * nb / total;
      m2[c] += o.m2[c] + d * d * na * nb / total;
    }
    n += o.n;
  }

  Moments Finish() const {
    Moments m{n, mean, std::vector<double>(mean.size(), 0.0)};
    if (n > 1) {
      for (std::size_t c = 0; c < mean.size(); ++c) {
        m.std_error[c] = std::sqrt(m2[c] / static_cast<double>(n - 1) /
                                   static_cast<double>(n));
      }
    }
    return m;
  }
};

inline constexpr std::int64_t kBlockSize = 4096;

}  // namespace internal

// Moments of sample(e) over episodes e in [0, episodes). Episodes are cut
// into fixed blocks that are reduced in block order, so the result does not
// depend on the thread count. `sample` must be safe to call concurrently.
template <typename Fn>
Moments MonteCarloMoments(std::int64_t episodes, Fn&& sample, int jobs = 0) {
  const std::int64_t blocks =
      (episodes + internal::kBlockSize - 1) / internal::kBlockSize;
  std::vector<internal::Accumulator> partial(blocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs != 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t end =
        std::min(episodes, (b + 1) * internal::kBlockSize);
    for (std::int64_t e = b * internal::kBlockSize; e < end; ++e) {
      partial[b].Add(sample(e));
    }
  }
  internal::Accumulator total;
  for (const auto& p : partial) total.Merge(p);
  return total.Finish();
}

// Plain single-pass reference for MonteCarloMoments.
template <typename Fn>
Moments MonteCarloMomentsSerial(std::int64_t episodes, Fn&& sample) {
  internal::Accumulator acc;
  for (std::int64_t e = 0; e < episodes; ++e) acc.Add(sample(e));
  return acc.Finish();
}

// One gradient estimate per episode with every agent holding the exact
// parameters; coordinates are the agents' blocks concatenated.
std::vector<double> GradientSample(const Game& game, const ParamSet& params,
                                   PolicyKind kind, EstimatorKind estimator,
                                   std::uint64_t seed, std::int64_t episode);

Moments GradientMoments(const Game& game, const ParamSet& params,
                        PolicyKind kind, EstimatorKind estimator,
                        std::int64_t episodes, std::uint64_t seed,
                        int jobs = 0);
Moments GradientMomentsSerial(const Game& game, const ParamSet& params,
                              PolicyKind kind, EstimatorKind estimator,
                              std::int64_t episodes, std::uint64_t seed);

}  // namespace npg

#endif  // NPG_MONTECARLO_H_
