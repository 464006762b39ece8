#ifndef NPG_CONSENSUS_H_
#define NPG_CONSENSUS_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "npg/policy.h"

namespace npg {

enum class Topology {
  kComplete,
  kStaticStar,
  kStaticRing,
  kTimeVaryingStar,  // one hub spoke per iteration
  kTimeVaryingRing,  // one ring edge per iteration
  kPerfect,          // beliefs overwritten with the true parameters
};

struct CommSchedule {
  Topology topology = Topology::kTimeVaryingStar;
  int num_agents = 5;
  int period = 5;  // edge-union window used by the connectivity check
  int hub = 0;

  // Throws std::invalid_argument on bad agent count, hub or period.
  void Validate() const;
};

using Edge = std::pair<int, int>;  // undirected, first < second

// Edges active at iteration t (t >= 0), sorted lexicographically.
std::vector<Edge> EdgesAt(const CommSchedule& schedule, std::int64_t t);

// Number of iterations after which EdgesAt repeats.
std::int64_t RotationLength(const CommSchedule& schedule);

// True when the union of E_start .. E_{start+window-1} connects all agents.
bool WindowUnionConnected(const CommSchedule& schedule, std::int64_t start,
                          int window);

// Checks every window of length `period` over one full rotation.
bool SatisfiesWindowConnectivity(const CommSchedule& schedule);

// Row-stochastic matrix used to mix the copies of agent `source`'s
// parameters. Row `source` is the unit row; any other row i puts
// 1 / (|N_i| + 1) on i and on each current neighbor.
struct WeightMatrix {
  int n = 0;
  std::vector<double> w;  // row-major n x n

  double operator()(int row, int col) const { return w[row * n + col]; }
};

WeightMatrix BuildWeights(const CommSchedule& schedule, std::int64_t t,
                          int source);

enum class BeliefInit { kZero, kExact };

// copies[i][j] is agent i's copy of agent j's parameters; copies[i][i] is
// always agent i's true block, so copies[i] is agent i's full view.
struct BeliefTable {
  std::vector<ParamSet> copies;

  static BeliefTable Init(const ParamSet& truth, BeliefInit mode);
};

// Refreshes each diagonal copy from `truth` (the freshly updated
// parameters), then mixes every source's copies with BuildWeights(t, j).
void ConsensusStep(BeliefTable& beliefs, const ParamSet& truth,
                   const CommSchedule& schedule, std::int64_t t);

// (1 / N(N-1)) sum_i sum_{j != i} || theta_i - copies[j][i] ||.
double BeliefError(const BeliefTable& beliefs, const ParamSet& truth);

}  // namespace npg

#endif  // NPG_CONSENSUS_H_
