#include "npg/rng.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace npg {

std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(MixSeed(seed, stream_id)) {}

RngStream RngStream::Derive(std::uint64_t master_seed, StreamKind kind,
                            std::uint64_t index, std::uint64_t sub_index) {
  std::uint64_t id = MixSeed(static_cast<std::uint64_t>(kind), index);
  id = MixSeed(id, sub_index);
  return RngStream(master_seed, id);
}

double RngStream::Normal(double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

std::int64_t DrawGeometric(RngStream& stream, double success_prob) {
  if (!(success_prob > 0.0 && success_prob <= 1.0)) {
    throw std::invalid_argument("geometric success probability must lie in "
                                "(0, 1], got " +
                                std::to_string(success_prob));
  }
  if (success_prob == 1.0) return 0;
  // Inversion: T = floor(log(U) / log(1 - p)) with U uniform on (0, 1].
  const double u = 1.0 - stream.Uniform();
  return static_cast<std::int64_t>(
      std::floor(std::log(u) / std::log1p(-success_prob)));
}

}  // namespace npg
