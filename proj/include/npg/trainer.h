#ifndef NPG_TRAINER_H_
#define NPG_TRAINER_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "npg/consensus.h"
#include "npg/estimation.h"
#include "npg/game.h"
#include "npg/policy.h"

namespace npg {

// alpha_t = alpha0 / t^beta with t counted from 1.
struct StepSchedule {
  double alpha0 = 1.0;
  double beta = 0.5;

  double At(std::int64_t t) const {
    return alpha0 / std::pow(static_cast<double>(t), beta);
  }
};

struct TrainConfig {
  std::int64_t iterations = 2000;
  int replications = 100;
  PolicyKind policy = PolicyKind::kNetworked;
  EstimatorKind estimator = EstimatorKind::kAdvantage;
  CommSchedule comm;
  BeliefInit belief_init = BeliefInit::kZero;
  StepSchedule step;
  double init_std = 0.3;
  std::uint64_t seed = 20240601;

  // Throws std::invalid_argument when the configuration cannot be run on
  // `game` (bad counts, beta outside (0, 1], disconnected window union).
  void Validate(const Game& game) const;
};

inline constexpr double kEmaRate = 0.05;

struct MetricRow {
  std::int64_t t = 0;
  double alpha = 0.0;
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::vector<std::int64_t> value_horizons;
  std::vector<double> rhat;       // per agent
  std::vector<double> returns;    // per agent, Q-hat
  std::vector<double> grad_norm;  // per agent, ||grad_i||
  double grad_norm_joint = 0.0;   // norm of the concatenated gradient
  double grad_norm_avg = 0.0;     // (1/N) sum_i ||grad_i||
  double grad_sq_sum = 0.0;       // sum_i ||grad_i||^2
  double belief_error = 0.0;
  double ema_return = 0.0;        // EMA of the agent-mean return estimate
  double ema_rhat = 0.0;          // EMA of the agent-mean R-hat
};

struct MetricLog {
  int num_agents = 0;
  std::vector<MetricRow> rows;
};

struct TrainResult {
  ParamSet params;
  BeliefTable beliefs;
  MetricLog log;
};

// Networked policy gradient play for config.iterations rounds:
// estimate under each agent's beliefs, ascend, exchange, log.
TrainResult Train(const Game& game, const TrainConfig& config);

std::uint64_t ReplicationSeed(std::uint64_t master_seed, int replication);

// Scalar per-iteration metrics aggregated across replications.
const std::vector<std::string>& ScalarMetricNames();
std::vector<double> ScalarMetrics(const MetricRow& row);

struct AggregateLog {
  int replications = 0;
  std::vector<std::int64_t> t;
  std::vector<std::vector<double>> mean;  // [iteration][metric]
  std::vector<std::vector<double>> ci95;  // half-width, normal approximation
};

// Mean and 1.96 * s / sqrt(R) per iteration and metric. Requires >= 2 logs
// of equal length.
AggregateLog Aggregate(std::span<const MetricLog> logs);

struct ReplicationSet {
  std::vector<MetricLog> logs;
  AggregateLog aggregate;
};

// Replication r trains with seed ReplicationSeed(config.seed, r). The OpenMP
// version spreads replications over `jobs` threads (<= 0 means the runtime
// default); results are bit-identical to the serial reference.
ReplicationSet RunReplications(const Game& game, const TrainConfig& config,
                               int jobs = 0);
ReplicationSet RunReplicationsSerial(const Game& game,
                                     const TrainConfig& config);

// Running minimum over t of the trailing-window mean of sum_i ||grad_i||^2.
std::vector<double> StationarityTrace(const MetricLog& log, int window);
double StationarityDiagnostic(const MetricLog& log, int window);

struct AlphaSweep {
  std::vector<double> grid;
  std::vector<double> final_ema;  // mean final EMA return per grid point
  std::size_t best = 0;
  ReplicationSet best_run;
};

// Runs the replications for every alpha0 in `grid` and keeps the one with
// the highest mean final EMA return.
AlphaSweep SweepAlpha0(const Game& game, TrainConfig config,
                       std::span<const double> grid, int jobs = 0);

inline constexpr double kAlpha0Grid[] = {10.0, 1.0, 0.1};

}  // namespace npg

#endif  // NPG_TRAINER_H_
