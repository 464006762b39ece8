#include "npg/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace npg {

void TrainConfig::Validate(const Game& game) const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument(what);
  };
  if (iterations < 1) fail("iterations must be >= 1");
  if (replications < 1) fail("replications must be >= 1");
  if (!(step.alpha0 > 0.0) || !std::isfinite(step.alpha0)) {
    fail("alpha0 must be > 0");
  }
  if (!(step.beta > 0.0 && step.beta <= 1.0)) {
    fail("beta must lie in (0, 1], got " + std::to_string(step.beta));
  }
  if (!(init_std >= 0.0)) fail("init_std must be >= 0");
  if (comm.num_agents != game.num_agents()) {
    fail("communication schedule has " + std::to_string(comm.num_agents) +
         " agents, game has " + std::to_string(game.num_agents()));
  }
  comm.Validate();
  if (!SatisfiesWindowConnectivity(comm)) {
    fail("edge union over windows of " + std::to_string(comm.period) +
         " iterations is not connected");
  }
}

namespace {

double Norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

}  // namespace

TrainResult Train(const Game& game, const TrainConfig& config) {
  config.Validate(game);
  const int n = game.num_agents();

  TrainResult out;
  out.params =
      InitParams(n, game.num_actions(), config.init_std, config.seed);
  out.beliefs = BeliefTable::Init(out.params, config.belief_init);
  out.log.num_agents = n;
  out.log.rows.reserve(config.iterations);

  Environment env(game);
  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    IterationStreams streams = IterationStreams::Derive(config.seed, t, n);
    GradientEstimate est = EstimateGradient(
        env, out.beliefs.copies, config.policy, config.estimator, streams);

    const double alpha = config.step.At(t);
    for (int i = 0; i < n; ++i) {
      std::span<double> theta = out.params[i].flat();
      for (std::size_t m = 0; m < theta.size(); ++m) {
        theta[m] += alpha * est.per_agent[i][m];
      }
    }
    ConsensusStep(out.beliefs, out.params, config.comm, t - 1);

    MetricRow row;
    row.t = t;
    row.alpha = alpha;
    row.t1 = est.t1;
    row.t2 = est.t2;
    row.value_horizons = est.value_horizons;
    row.grad_norm.resize(n);
    for (int i = 0; i < n; ++i) {
      row.grad_norm[i] = Norm(est.per_agent[i]);
      row.grad_sq_sum += row.grad_norm[i] * row.grad_norm[i];
      row.grad_norm_avg += row.grad_norm[i];
    }
    row.grad_norm_avg /= n;
    row.grad_norm_joint = std::sqrt(row.grad_sq_sum);
    row.belief_error = BeliefError(out.beliefs, out.params);

    const double ret = Mean(est.returns);
    const double rh = Mean(est.rhat);
    if (out.log.rows.empty()) {
      row.ema_return = ret;
      row.ema_rhat = rh;
    } else {
      const MetricRow& prev = out.log.rows.back();
      row.ema_return = (1.0 - kEmaRate) * prev.ema_return + kEmaRate * ret;
      row.ema_rhat = (1.0 - kEmaRate) * prev.ema_rhat + kEmaRate * rh;
    }
    row.rhat = std::move(est.rhat);
    row.returns = std::move(est.returns);
    out.log.rows.push_back(std::move(row));
  }
  return out;
}

std::uint64_t ReplicationSeed(std::uint64_t master_seed, int replication) {
  return MixSeed(MixSeed(master_seed,
                         static_cast<std::uint64_t>(StreamKind::kReplication)),
                 static_cast<std::uint64_t>(replication));
}

const std::vector<std::string>& ScalarMetricNames() {
  static const std::vector<std::string> names = {
      "alpha",          "rhat",          "return",
      "grad_norm_avg",  "grad_norm_joint", "grad_sq_sum",
      "belief_error",   "ema_return",    "ema_rhat"};
  return names;
}

std::vector<double> ScalarMetrics(const MetricRow& row) {
  return {row.alpha,         Mean(row.rhat),         Mean(row.returns),
          row.grad_norm_avg, row.grad_norm_joint,    row.grad_sq_sum,
          row.belief_error,  row.ema_return,         row.ema_rhat};
}

AggregateLog Aggregate(std::span<const MetricLog> logs) {
  if (logs.size() < 2) {
    throw std::invalid_argument("aggregation needs >= 2 replications");
  }
  const std::size_t rows = logs.front().rows.size();
  for (const MetricLog& log : logs) {
    if (log.rows.size() != rows) {
      throw std::invalid_argument("replication logs differ in length");
    }
  }
  const double r = static_cast<double>(logs.size());
  const std::size_t metrics = ScalarMetricNames().size();

  AggregateLog agg;
  agg.replications = static_cast<int>(logs.size());
  agg.t.resize(rows);
  agg.mean.assign(rows, std::vector<double>(metrics, 0.0));
  agg.ci95.assign(rows, std::vector<double>(metrics, 0.0));
  std::vector<std::vector<double>> values(logs.size());
  for (std::size_t k = 0; k < rows; ++k) {
    agg.t[k] = logs.front().rows[k].t;
    for (std::size_t rep = 0; rep < logs.size(); ++rep) {
      values[rep] = ScalarMetrics(logs[rep].rows[k]);
    }
    for (std::size_t m = 0; m < metrics; ++m) {
      double sum = 0.0;
      for (const auto& v : values) sum += v[m];
      const double mean = sum / r;
      double ss = 0.0;
      for (const auto& v : values) ss += (v[m] - mean) * (v[m] - mean);
      agg.mean[k][m] = mean;
      agg.ci95[k][m] = 1.96 * std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
    }
  }
  return agg;
}

namespace {

TrainConfig ForReplication(const TrainConfig& config, int r) {
  TrainConfig c = config;
  c.seed = ReplicationSeed(config.seed, r);
  return c;
}

ReplicationSet Finish(std::vector<MetricLog> logs) {
  ReplicationSet set;
  set.logs = std::move(logs);
  if (set.logs.size() >= 2) set.aggregate = Aggregate(set.logs);
  return set;
}

}  // namespace

ReplicationSet RunReplications(const Game& game, const TrainConfig& config,
                               int jobs) {
  config.Validate(game);
  const int reps = config.replications;
  std::vector<MetricLog> logs(reps);
  std::vector<std::string> errors(reps);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs != 1)
  for (int r = 0; r < reps; ++r) {
    try {
      logs[r] = Train(game, ForReplication(config, r)).log;
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return Finish(std::move(logs));
}

ReplicationSet RunReplicationsSerial(const Game& game,
                                     const TrainConfig& config) {
  config.Validate(game);
  std::vector<MetricLog> logs;
  logs.reserve(config.replications);
  for (int r = 0; r < config.replications; ++r) {
    logs.push_back(Train(game, ForReplication(config, r)).log);
  }
  return Finish(std::move(logs));
}

std::vector<double> StationarityTrace(const MetricLog& log, int window) {
  if (window < 1 || static_cast<std::size_t>(window) > log.rows.size()) {
    throw std::invalid_argument("stationarity window must lie in [1, T_f]");
  }
  std::vector<double> trace;
  double running = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    sum += log.rows[k].grad_sq_sum;
    if (k >= static_cast<std::size_t>(window)) {
      sum -= log.rows[k - window].grad_sq_sum;
    }
    if (k + 1 >= static_cast<std::size_t>(window)) {
      running = std::min(running, sum / window);
      trace.push_back(running);
    }
  }
  return trace;
}

double StationarityDiagnostic(const MetricLog& log, int window) {
  return StationarityTrace(log, window).back();
}

AlphaSweep SweepAlpha0(const Game& game, TrainConfig config,
                       std::span<const double> grid, int jobs) {
  AlphaSweep sweep;
  sweep.grid.assign(grid.begin(), grid.end());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    config.step.alpha0 = grid[g];
    ReplicationSet run = RunReplications(game, config, jobs);
    double final_ema = 0.0;
    for (const MetricLog& log : run.logs) {
      final_ema += log.rows.back().ema_return;
    }
    final_ema /= static_cast<double>(run.logs.size());
    sweep.final_ema.push_back(final_ema);
    // A diverged run (NaN) never wins unless every grid point diverged.
    if (g == 0 || (!std::isnan(final_ema) && (std::isnan(best) || final_ema > best))) {
      best = final_ema;
      sweep.best = g;
      sweep.best_run = std::move(run);
    }
  }
  return sweep;
}

}  // namespace npg
