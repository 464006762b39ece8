#include "npg/consensus.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace npg {

void CommSchedule::Validate() const {
  if (num_agents < 2) {
    throw std::invalid_argument("communication graph needs >= 2 agents");
  }
  if (hub < 0 || hub >= num_agents) {
    throw std::invalid_argument("hub " + std::to_string(hub) +
                                " outside [0, " + std::to_string(num_agents) +
                                ")");
  }
  if (period < 1) throw std::invalid_argument("period must be >= 1");
}

namespace {

std::vector<Edge> StarEdges(const CommSchedule& s) {
  std::vector<Edge> edges;
  for (int j = 0; j < s.num_agents; ++j) {
    if (j != s.hub) edges.emplace_back(std::min(j, s.hub), std::max(j, s.hub));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<Edge> RingEdges(const CommSchedule& s) {
  std::set<Edge> edges;
  for (int i = 0; i < s.num_agents; ++i) {
    const int j = (i + 1) % s.num_agents;
    edges.emplace(std::min(i, j), std::max(i, j));
  }
  return {edges.begin(), edges.end()};
}

std::vector<Edge> CompleteEdges(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace

std::vector<Edge> EdgesAt(const CommSchedule& schedule, std::int64_t t) {
  switch (schedule.topology) {
    case Topology::kComplete:
    case Topology::kPerfect:
      return CompleteEdges(schedule.num_agents);
    case Topology::kStaticStar:
      return StarEdges(schedule);
    case Topology::kStaticRing:
      return RingEdges(schedule);
    case Topology::kTimeVaryingStar: {
      const std::vector<Edge> all = StarEdges(schedule);
      return {all[t % static_cast<std::int64_t>(all.size())]};
    }
    case Topology::kTimeVaryingRing: {
      const std::vector<Edge> all = RingEdges(schedule);
      return {all[t % static_cast<std::int64_t>(all.size())]};
    }
  }
  return {};
}

std::int64_t RotationLength(const CommSchedule& schedule) {
  switch (schedule.topology) {
    case Topology::kTimeVaryingStar:
      return static_cast<std::int64_t>(StarEdges(schedule).size());
    case Topology::kTimeVaryingRing:
      return static_cast<std::int64_t>(RingEdges(schedule).size());
    default:
      return 1;
  }
}

bool WindowUnionConnected(const CommSchedule& schedule, std::int64_t start,
                          int window) {
  const int n = schedule.num_agents;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (std::int64_t t = start; t < start + window; ++t) {
    for (const auto& [a, b] : EdgesAt(schedule, t)) {
      const int ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
  }
  return components == 1;
}

bool SatisfiesWindowConnectivity(const CommSchedule& schedule) {
  const std::int64_t cycle = RotationLength(schedule);
  for (std::int64_t start = 0; start < cycle; ++start) {
    if (!WindowUnionConnected(schedule, start, schedule.period)) return false;
  }
  return true;
}

WeightMatrix BuildWeights(const CommSchedule& schedule, std::int64_t t,
                          int source) {
  const int n = schedule.num_agents;
  std::vector<std::vector<int>> neighbors(n);
  for (const auto& [a, b] : EdgesAt(schedule, t)) {
    neighbors[a].push_back(b);
    neighbors[b].push_back(a);
  }
  WeightMatrix m{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (int i = 0; i < n; ++i) {
    if (i == source) {
      m.w[i * n + i] = 1.0;
      continue;
    }
    const double share = 1.0 / static_cast<double>(neighbors[i].size() + 1);
    m.w[i * n + i] = share;
    for (int l : neighbors[i]) m.w[i * n + l] = share;
  }
  return m;
}

BeliefTable BeliefTable::Init(const ParamSet& truth, BeliefInit mode) {
  const int n = static_cast<int>(truth.size());
  BeliefTable table;
  table.copies.assign(n, truth);
  if (mode == BeliefInit::kZero) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) table.copies[i][j] = AgentParams(truth[j].num_actions());
      }
    }
  }
  return table;
}

void ConsensusStep(BeliefTable& beliefs, const ParamSet& truth,
                   const CommSchedule& schedule, std::int64_t t) {
  const int n = static_cast<int>(truth.size());
  if (schedule.topology == Topology::kPerfect) {
    for (int i = 0; i < n; ++i) beliefs.copies[i] = truth;
    return;
  }
  for (int j = 0; j < n; ++j) beliefs.copies[j][j] = truth[j];

  std::vector<std::vector<int>> neighbors(n);
  for (const auto& [a, b] : EdgesAt(schedule, t)) {
    neighbors[a].push_back(b);
    neighbors[b].push_back(a);
  }
  // Weights for source j differ from the uniform rule only in row j, which
  // keeps the diagonal copy fixed; mix the remaining rows directly.
  std::vector<AgentParams> column(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) column[l] = beliefs.copies[l][j];
    for (int i = 0; i < n; ++i) {
      if (i == j || neighbors[i].empty()) continue;
      const double share = 1.0 / static_cast<double>(neighbors[i].size() + 1);
      std::span<double> out = beliefs.copies[i][j].flat();
      for (std::size_t m = 0; m < out.size(); ++m) {
        double acc = column[i].flat()[m];
        for (int l : neighbors[i]) acc += column[l].flat()[m];
        out[m] = share * acc;
      }
    }
  }
}

double BeliefError(const BeliefTable& beliefs, const ParamSet& truth) {
  const int n = static_cast<int>(truth.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::span<const double> exact = truth[i].flat();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::span<const double> copy = beliefs.copies[j][i].flat();
      double sq = 0.0;
      for (std::size_t m = 0; m < exact.size(); ++m) {
        const double d = exact[m] - copy[m];
        sq += d * d;
      }
      total += std::sqrt(sq);
    }
  }
  return total / (static_cast<double>(n) * (n - 1));
}

}  // namespace npg
