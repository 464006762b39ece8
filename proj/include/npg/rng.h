#ifndef NPG_RNG_H_
#define NPG_RNG_H_

#include <cstdint>
#include <random>

namespace npg {

// Labels mixed into derived seeds. The horizon stream is shared by all
// agents in an iteration; action streams are per agent.
enum class StreamKind : std::uint64_t {
  kHorizon = 0x68,
  kAction = 0x61,
  kEnvironment = 0x65,
  kInit = 0x69,
  kReplication = 0x72,
};

// SplitMix64 finalizer applied to a combination of two words.
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  // Stream for (master seed, kind, index, sub-index). Indices are hashed, so
  // adding agents or iterations never perturbs existing streams.
  static RngStream Derive(std::uint64_t master_seed, StreamKind kind,
                          std::uint64_t index, std::uint64_t sub_index = 0);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Normal(double mean, double stddev);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// Draws from the geometric law on {0, 1, 2, ...} with
// P(T = x) = (1 - p)^x p. Throws std::invalid_argument unless p in (0, 1].
std::int64_t DrawGeometric(RngStream& stream, double success_prob);

}  // namespace npg

#endif  // NPG_RNG_H_
