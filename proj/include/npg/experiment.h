#ifndef NPG_EXPERIMENT_H_
#define NPG_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "npg/newsvendor.h"
#include "npg/trainer.h"

namespace npg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or missing input file.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full experiment description. Text form is a flat key=value file with
// section prefixes (env.*, policy.*, comm.*, train.*, output.*); '#' starts
// a comment. Defaults reproduce the newsvendor setup.
struct ExperimentSpec {
  NewsvendorConfig env;
  TrainConfig train;
  std::string output_dir;
  bool output_dir_set = false;

  // Canonical (key, value) pairs in a fixed order.
  std::vector<std::pair<std::string, std::string>> Entries() const;
  // FNV-1a over the canonical entries.
  std::uint64_t Hash() const;
  // Training config with the communication schedule sized to env.n_agents.
  TrainConfig Resolved() const;
};

const std::vector<std::string>& SpecKeys();

// Accepts a full key or a bare key matching exactly one full key's suffix.
void ApplySetting(ExperimentSpec& spec, std::string_view key,
                  std::string_view value);
// "key=value" form, as passed to --set.
void ApplyOverride(ExperimentSpec& spec, std::string_view assignment);

ExperimentSpec ParseSpec(std::string_view text);
ExperimentSpec LoadSpec(const std::filesystem::path& path);

std::string FormatDouble(double v);  // 17 significant digits

void WriteReplicationCsv(const std::filesystem::path& path,
                         const ExperimentSpec& spec, int replication,
                         const MetricLog& log);
void WriteAggregateCsv(const std::filesystem::path& path,
                       const ExperimentSpec& spec, const AggregateLog& agg);

struct Condition {
  std::string label;
  PolicyKind policy;
  EstimatorKind estimator;
  Topology topology;
};

// Condition grid for "fig2", "fig3" or "fig4"; throws ConfigError for any
// other name.
std::vector<Condition> FigureConditions(std::string_view figure);

struct ConditionResult {
  Condition condition;
  AlphaSweep sweep;
};

// Runs one condition on top of `base` with the alpha0 grid selection.
ConditionResult RunCondition(const ExperimentSpec& base,
                             const Condition& condition, int jobs = 0);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Assumption checks: window connectivity, weight rule, initial belief
// error, step schedule, reward bound.
std::vector<CheckResult> ValidateSpec(const ExperimentSpec& spec);

struct CliOptions {
  std::optional<std::filesystem::path> spec_path;
  std::vector<std::string> overrides;
  std::optional<std::filesystem::path> out_dir;
  int jobs = 0;
};

// Exit codes: 0 success, 1 failed run or check, 2 bad input (missing file,
// malformed config, unknown figure).
int CmdRun(const CliOptions& opts, std::ostream& out, std::ostream& err);
int CmdReproduce(std::string_view figure, double scale,
                 const CliOptions& opts, std::ostream& out, std::ostream& err);
int CmdValidate(const CliOptions& opts, std::ostream& out, std::ostream& err);

inline constexpr const char* kOutputDirEnv = "NPG_OUTPUT_DIR";

}  // namespace npg

#endif  // NPG_EXPERIMENT_H_
