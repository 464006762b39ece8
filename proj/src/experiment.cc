#include "npg/experiment.h"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#ifndef NPG_VERSION
#define NPG_VERSION "unknown"
#endif

namespace npg {

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double ParseDouble(std::string_view key, std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE ||
      !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + s +
                      "'");
  }
  return v;
}

template <typename Int>
Int ParseInt(std::string_view key, std::string_view text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

template <typename Enum>
struct Names {
  std::vector<std::pair<std::string, Enum>> entries;

  Enum Parse(std::string_view key, std::string_view text) const {
    for (const auto& [name, value] : entries) {
      if (name == text) return value;
    }
    std::string allowed;
    for (const auto& [name, value] : entries) {
      allowed += (allowed.empty() ? "" : ", ") + name;
    }
    throw ConfigError(std::string(key) + ": unknown value '" +
                      std::string(text) + "' (expected one of " + allowed +
                      ")");
  }
  std::string Name(Enum v) const {
    for (const auto& [name, value] : entries) {
      if (value == v) return name;
    }
    return "?";
  }
};

const Names<PolicyKind> kPolicyNames{{{"networked", PolicyKind::kNetworked},
                                      {"independent", PolicyKind::kIndependent}}};
const Names<EstimatorKind> kEstimatorNames{
    {{"q", EstimatorKind::kQ},
     {"advantage", EstimatorKind::kAdvantage},
     {"td", EstimatorKind::kTD}}};
const Names<Topology> kTopologyNames{
    {{"complete", Topology::kComplete},
     {"star", Topology::kStaticStar},
     {"ring", Topology::kStaticRing},
     {"tv_star", Topology::kTimeVaryingStar},
     {"tv_ring", Topology::kTimeVaryingRing},
     {"perfect", Topology::kPerfect}}};
const Names<BeliefInit> kBeliefNames{
    {{"zero", BeliefInit::kZero}, {"exact", BeliefInit::kExact}}};

struct KeyHandler {
  std::string key;
  std::function<void(ExperimentSpec&, std::string_view)> set;
  std::function<std::string(const ExperimentSpec&)> get;
};

const std::vector<KeyHandler>& Handlers() {
  using S = ExperimentSpec;
  static const std::vector<KeyHandler> handlers = {
      {"env.n_agents",
       [](S& s, std::string_view v) { s.env.n_agents = ParseInt<int>("env.n_agents", v); },
       [](const S& s) { return std::to_string(s.env.n_agents); }},
      {"env.demand",
       [](S& s, std::string_view v) { s.env.demand = ParseDouble("env.demand", v); },
       [](const S& s) { return FormatDouble(s.env.demand); }},
      {"env.cost_opportunity",
       [](S& s, std::string_view v) {
         s.env.cost_opportunity = ParseDouble("env.cost_opportunity", v);
       },
       [](const S& s) { return FormatDouble(s.env.cost_opportunity); }},
      {"env.cost_storage",
       [](S& s, std::string_view v) {
         s.env.cost_storage = ParseDouble("env.cost_storage", v);
       },
       [](const S& s) { return FormatDouble(s.env.cost_storage); }},
      {"env.discount",
       [](S& s, std::string_view v) { s.env.discount = ParseDouble("env.discount", v); },
       [](const S& s) { return FormatDouble(s.env.discount); }},
      {"env.initial_inventory",
       [](S& s, std::string_view v) {
         s.env.initial_inventory = ParseDouble("env.initial_inventory", v);
       },
       [](const S& s) { return FormatDouble(s.env.initial_inventory); }},
      {"policy.kind",
       [](S& s, std::string_view v) { s.train.policy = kPolicyNames.Parse("policy.kind", v); },
       [](const S& s) { return kPolicyNames.Name(s.train.policy); }},
      {"policy.init_std",
       [](S& s, std::string_view v) { s.train.init_std = ParseDouble("policy.init_std", v); },
       [](const S& s) { return FormatDouble(s.train.init_std); }},
      {"comm.topology",
       [](S& s, std::string_view v) {
         s.train.comm.topology = kTopologyNames.Parse("comm.topology", v);
       },
       [](const S& s) { return kTopologyNames.Name(s.train.comm.topology); }},
      {"comm.period",
       [](S& s, std::string_view v) { s.train.comm.period = ParseInt<int>("comm.period", v); },
       [](const S& s) { return std::to_string(s.train.comm.period); }},
      {"comm.hub",
       [](S& s, std::string_view v) { s.train.comm.hub = ParseInt<int>("comm.hub", v); },
       [](const S& s) { return std::to_string(s.train.comm.hub); }},
      {"comm.init_beliefs",
       [](S& s, std::string_view v) {
         s.train.belief_init = kBeliefNames.Parse("comm.init_beliefs", v);
       },
       [](const S& s) { return kBeliefNames.Name(s.train.belief_init); }},
      {"train.estimator",
       [](S& s, std::string_view v) {
         s.train.estimator = kEstimatorNames.Parse("train.estimator", v);
       },
       [](const S& s) { return kEstimatorNames.Name(s.train.estimator); }},
      {"train.iterations",
       [](S& s, std::string_view v) {
         s.train.iterations = ParseInt<std::int64_t>("train.iterations", v);
       },
       [](const S& s) { return std::to_string(s.train.iterations); }},
      {"train.replications",
       [](S& s, std::string_view v) {
         s.train.replications = ParseInt<int>("train.replications", v);
       },
       [](const S& s) { return std::to_string(s.train.replications); }},
      {"train.alpha0",
       [](S& s, std::string_view v) { s.train.step.alpha0 = ParseDouble("train.alpha0", v); },
       [](const S& s) { return FormatDouble(s.train.step.alpha0); }},
      {"train.beta",
       [](S& s, std::string_view v) { s.train.step.beta = ParseDouble("train.beta", v); },
       [](const S& s) { return FormatDouble(s.train.step.beta); }},
      {"train.seed",
       [](S& s, std::string_view v) { s.train.seed = ParseInt<std::uint64_t>("train.seed", v); },
       [](const S& s) { return std::to_string(s.train.seed); }},
      {"output.dir",
       [](S& s, std::string_view v) {
         s.output_dir = std::string(v);
         s.output_dir_set = true;
       },
       [](const S& s) { return s.output_dir; }},
  };
  return handlers;
}

const KeyHandler& Resolve(std::string_view key) {
  const auto& handlers = Handlers();
  for (const auto& h : handlers) {
    if (h.key == key) return h;
  }
  const KeyHandler* match = nullptr;
  int count = 0;
  for (const auto& h : handlers) {
    const auto dot = h.key.find('.');
    if (h.key.substr(dot + 1) == key) {
      match = &h;
      ++count;
    }
  }
  if (count == 1) return *match;
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::vector<std::string>& SpecKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& h : Handlers()) k.push_back(h.key);
    return k;
  }();
  return keys;
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::Entries()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& h : Handlers()) {
    if (h.key == "output.dir") continue;  // where results go, not what they are
    out.emplace_back(h.key, h.get(*this));
  }
  return out;
}

std::uint64_t ExperimentSpec::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : Entries()) {
    for (char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

TrainConfig ExperimentSpec::Resolved() const {
  TrainConfig c = train;
  c.comm.num_agents = env.n_agents;
  return c;
}

void ApplySetting(ExperimentSpec& spec, std::string_view key,
                  std::string_view value) {
  Resolve(key).set(spec, value);
}

void ApplyOverride(ExperimentSpec& spec, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) +
                      "' is not of the form key=value");
  }
  ApplySetting(spec, Trim(assignment.substr(0, eq)),
               Trim(assignment.substr(eq + 1)));
}

ExperimentSpec ParseSpec(std::string_view text) {
  ExperimentSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = Trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    if (key.find('.') == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' needs a section prefix");
    }
    try {
      ApplySetting(spec, key, Trim(std::string_view(body).substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return spec;
}

ExperimentSpec LoadSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot read spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseSpec(buf.str());
}

namespace {

void WriteProvenance(std::ostream& os, const ExperimentSpec& spec) {
  os << "# code_version=" << NPG_VERSION << "\n";
  os << "# config_hash=" << std::hex << std::setw(16) << std::setfill('0')
     << spec.Hash() << std::dec << std::setfill(' ') << "\n";
  os << "# master_seed=" << spec.train.seed << "\n";
  for (const auto& [k, v] : spec.Entries()) os << "# " << k << "=" << v << "\n";
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FileError("cannot write " + path.string());
  return os;
}

}  // namespace

void WriteReplicationCsv(const std::filesystem::path& path,
                         const ExperimentSpec& spec, int replication,
                         const MetricLog& log) {
  std::ofstream os = OpenForWrite(path);
  WriteProvenance(os, spec);
  os << "# replication=" << replication << "\n";
  os << "# replication_seed=" << ReplicationSeed(spec.train.seed, replication)
     << "\n";
  const int n = log.num_agents;
  os << "t,alpha,t1,t2,tv1,tv2";
  for (const char* name : {"rhat", "return", "grad_norm"}) {
    for (int i = 0; i < n; ++i) os << "," << name << "_" << i;
  }
  os << ",grad_norm_joint,grad_norm_avg,grad_sq_sum,belief_error,ema_return,"
        "ema_rhat\n";
  for (const MetricRow& row : log.rows) {
    os << row.t << "," << FormatDouble(row.alpha) << "," << row.t1 << ","
       << row.t2;
    for (std::size_t k = 0; k < 2; ++k) {
      os << ","
         << (k < row.value_horizons.size() ? row.value_horizons[k] : -1);
    }
    for (const auto* v : {&row.rhat, &row.returns, &row.grad_norm}) {
      for (double x : *v) os << "," << FormatDouble(x);
    }
    for (double x : {row.grad_norm_joint, row.grad_norm_avg, row.grad_sq_sum,
                     row.belief_error, row.ema_return, row.ema_rhat}) {
      os << "," << FormatDouble(x);
    }
    os << "\n";
  }
}

void WriteAggregateCsv(const std::filesystem::path& path,
                       const ExperimentSpec& spec, const AggregateLog& agg) {
  std::ofstream os = OpenForWrite(path);
  WriteProvenance(os, spec);
  os << "# replications=" << agg.replications << "\n";
  os << "t";
  for (const std::string& name : ScalarMetricNames()) {
    os << "," << name << "_mean," << name << "_ci95";
  }
  os << "\n";
  for (std::size_t k = 0; k < agg.t.size(); ++k) {
    os << agg.t[k];
    for (std::size_t m = 0; m < agg.mean[k].size(); ++m) {
      os << "," << FormatDouble(agg.mean[k][m]) << ","
         << FormatDouble(agg.ci95[k][m]);
    }
    os << "\n";
  }
}

std::vector<Condition> FigureConditions(std::string_view figure) {
  using P = PolicyKind;
  using E = EstimatorKind;
  using T = Topology;
  const std::vector<Condition> topologies = {
      {"topo_perfect", P::kNetworked, E::kAdvantage, T::kPerfect},
      {"topo_star", P::kNetworked, E::kAdvantage, T::kStaticStar},
      {"topo_ring", P::kNetworked, E::kAdvantage, T::kStaticRing},
      {"topo_tv_star", P::kNetworked, E::kAdvantage, T::kTimeVaryingStar},
      {"topo_tv_ring", P::kNetworked, E::kAdvantage, T::kTimeVaryingRing}};
  const std::vector<Condition> networked = {
      {"net_q", P::kNetworked, E::kQ, T::kTimeVaryingStar},
      {"net_advantage", P::kNetworked, E::kAdvantage, T::kTimeVaryingStar},
      {"net_td", P::kNetworked, E::kTD, T::kTimeVaryingStar}};
  if (figure == "fig2") {
    std::vector<Condition> c = networked;
    c.push_back({"ind_q", P::kIndependent, E::kQ, T::kTimeVaryingStar});
    c.push_back({"ind_advantage", P::kIndependent, E::kAdvantage,
                 T::kTimeVaryingStar});
    c.push_back({"ind_td", P::kIndependent, E::kTD, T::kTimeVaryingStar});
    return c;
  }
  if (figure == "fig3") {
    std::vector<Condition> c = networked;
    c.insert(c.end(), topologies.begin(), topologies.end());
    return c;
  }
  if (figure == "fig4") return topologies;
  throw ConfigError("unknown figure '" + std::string(figure) +
                    "' (expected fig2, fig3 or fig4)");
}

ConditionResult RunCondition(const ExperimentSpec& base,
                             const Condition& condition, int jobs) {
  ExperimentSpec spec = base;
  spec.train.policy = condition.policy;
  spec.train.estimator = condition.estimator;
  spec.train.comm.topology = condition.topology;
  const Newsvendor game(spec.env);
  return {condition, SweepAlpha0(game, spec.Resolved(), kAlpha0Grid, jobs)};
}

std::vector<CheckResult> ValidateSpec(const ExperimentSpec& spec) {
  std::vector<CheckResult> checks;
  const TrainConfig cfg = spec.Resolved();
  const int n = spec.env.n_agents;

  {
    CheckResult c{"environment", true, "newsvendor parameters in range"};
    try {
      spec.env.Validate();
    } catch (const std::exception& e) {
      c = {"environment", false, e.what()};
    }
    checks.push_back(c);
  }

  bool schedule_ok = true;
  {
    CheckResult c{"A1 window connectivity", false, ""};
    try {
      cfg.comm.Validate();
      c.pass = SatisfiesWindowConnectivity(cfg.comm);
      c.detail = std::string("edge union over every ") +
                 std::to_string(cfg.comm.period) + "-iteration window " +
                 (c.pass ? "is connected" : "is NOT connected");
    } catch (const std::exception& e) {
      schedule_ok = false;
      c.detail = e.what();
    }
    checks.push_back(c);
  }

  {
    CheckResult c{"A2 weight rule", schedule_ok, ""};
    if (schedule_ok) {
      const double h = 1.0 / n;
      const std::int64_t horizon =
          2 * RotationLength(cfg.comm) + cfg.comm.period;
      double worst_row = 0.0, smallest = 1.0;
      for (std::int64_t t = 0; t < horizon && c.pass; ++t) {
        for (int j = 0; j < n; ++j) {
          const WeightMatrix w = BuildWeights(cfg.comm, t, j);
          if (w(j, j) != 1.0) c.pass = false;
          for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int l = 0; l < n; ++l) {
              row += w(i, l);
              if (w(i, l) > 0.0) smallest = std::min(smallest, w(i, l));
            }
            worst_row = std::max(worst_row, std::abs(row - 1.0));
          }
        }
      }
      c.pass = c.pass && worst_row < 1e-12 && smallest >= h - 1e-15;
      std::ostringstream d;
      d << "h=1/N=" << h << ", min nonzero weight " << smallest
        << ", max |row sum - 1| " << worst_row;
      c.detail = d.str();
    } else {
      c.detail = "schedule invalid";
    }
    checks.push_back(c);
  }

  {
    CheckResult c{"A3 initial belief error", false, ""};
    const bool finite = std::isfinite(cfg.init_std) && cfg.init_std >= 0.0;
    const double kappa = cfg.belief_init == BeliefInit::kExact
                             ? 0.0
                             : cfg.init_std * std::sqrt(2.0 / M_PI);
    c.pass = finite;
    std::ostringstream d;
    d << "init_beliefs=" << kBeliefNames.Name(cfg.belief_init)
      << ", E|belief - theta| per coordinate = " << kappa;
    c.detail = d.str();
    checks.push_back(c);
  }

  {
    CheckResult c{"A4 step schedule", false, ""};
    const double beta = cfg.step.beta;
    c.pass = beta > 0.0 && beta <= 1.0 && cfg.step.alpha0 > 0.0;
    std::ostringstream d;
    d << "alpha_t = " << cfg.step.alpha0 << " / t^" << beta;
    if (c.pass) {
      double s1 = 0.0, s2 = 0.0, s1_k = 0.0, s2_k = 0.0;
      for (std::int64_t t = 1; t <= 1000000; ++t) {
        const double a = cfg.step.At(t);
        s1 += a;
        s2 += a * a;
        if (t == 1000) {
          s1_k = s1;
          s2_k = s2;
        }
      }
      d << "; sum alpha: " << s1_k << " (1e3), " << s1 << " (1e6)"
        << "; sum alpha^2: " << s2_k << " (1e3), " << s2 << " (1e6)";
      d << (beta > 0.5 ? "; square-summable" : "; not square-summable");
    } else {
      d << "; beta must lie in (0, 1]";
    }
    c.detail = d.str();
    checks.push_back(c);
  }

  {
    CheckResult c{"A5 reward bound", false, ""};
    try {
      const Newsvendor game(spec.env);
      c.pass = std::isfinite(game.reward_bound());
      c.detail = "|r| <= " + FormatDouble(game.reward_bound());
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    checks.push_back(c);
  }

  {
    CheckResult c{"run counts", cfg.iterations >= 1 && cfg.replications >= 2,
                  "iterations=" + std::to_string(cfg.iterations) +
                      ", replications=" + std::to_string(cfg.replications) +
                      " (>= 2 needed for confidence intervals)"};
    checks.push_back(c);
  }
  return checks;
}

namespace {

// Loads the spec (or defaults) and applies overrides. Returns an exit code
// on failure.
std::optional<int> LoadWithOverrides(const CliOptions& opts,
                                     ExperimentSpec& spec, std::ostream& err) {
  try {
    if (opts.spec_path) spec = LoadSpec(*opts.spec_path);
    for (const std::string& o : opts.overrides) ApplyOverride(spec, o);
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: "
        << (opts.spec_path ? opts.spec_path->string() + ": " : std::string())
        << e.what() << "\n";
    return 2;
  }
  return std::nullopt;
}

std::filesystem::path OutputDir(const CliOptions& opts,
                                const ExperimentSpec& spec) {
  if (opts.out_dir) return *opts.out_dir;
  if (spec.output_dir_set) return spec.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "npg_out";
}

std::string RepFileName(int r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "rep_%03d.csv", r);
  return buf;
}

}  // namespace

int CmdRun(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  if (auto code = LoadWithOverrides(opts, spec, err)) return *code;
  const TrainConfig cfg = spec.Resolved();
  try {
    if (cfg.replications < 2) {
      throw std::invalid_argument("replications must be >= 2");
    }
    const Newsvendor game(spec.env);
    const ReplicationSet set = RunReplications(game, cfg, opts.jobs);
    const std::filesystem::path dir = OutputDir(opts, spec);
    for (int r = 0; r < cfg.replications; ++r) {
      WriteReplicationCsv(dir / RepFileName(r), spec, r, set.logs[r]);
    }
    WriteAggregateCsv(dir / "aggregate.csv", spec, set.aggregate);

    const int window = static_cast<int>(std::min<std::int64_t>(100, cfg.iterations));
    double ema = 0.0, belief = 0.0, stat = 0.0;
    for (const MetricLog& log : set.logs) {
      ema += log.rows.back().ema_return;
      belief += log.rows.back().belief_error;
      stat += StationarityDiagnostic(log, window);
    }
    const double r = cfg.replications;
    out << "wrote " << cfg.replications + 1 << " files to " << dir.string()
        << "\n";
    out << "final EMA return (mean over replications): "
        << FormatDouble(ema / r) << "\n";
    out << "final belief error: " << FormatDouble(belief / r) << "\n";
    out << "stationarity diagnostic (window " << window
        << "): " << FormatDouble(stat / r) << "\n";
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int CmdReproduce(std::string_view figure, double scale,
                 const CliOptions& opts, std::ostream& out,
                 std::ostream& err) {
  ExperimentSpec base;
  if (auto code = LoadWithOverrides(opts, base, err)) return *code;
  std::vector<Condition> conditions;
  try {
    conditions = FigureConditions(figure);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!(scale > 0.0 && scale <= 1.0)) {
    err << "error: scale must lie in (0, 1], got " << scale << "\n";
    return 2;
  }
  base.train.replications =
      std::max<int>(2, static_cast<int>(std::lround(100 * scale)));
  base.train.iterations =
      std::max<std::int64_t>(1, std::llround(2000 * scale));

  const std::filesystem::path dir =
      OutputDir(opts, base) / std::string(figure);
  try {
    std::ofstream manifest = OpenForWrite(dir / "manifest.csv");
    manifest << "# code_version=" << NPG_VERSION << "\n";
    manifest << "# figure=" << figure << "\n# scale=" << FormatDouble(scale)
             << "\n";
    manifest << "condition,file,policy,estimator,topology,alpha0,"
                "final_ema_return,final_belief_error,replications,"
                "iterations\n";
    for (const Condition& c : conditions) {
      ConditionResult res = RunCondition(base, c, opts.jobs);
      ExperimentSpec spec = base;
      spec.train.policy = c.policy;
      spec.train.estimator = c.estimator;
      spec.train.comm.topology = c.topology;
      spec.train.step.alpha0 = res.sweep.grid[res.sweep.best];
      const std::string file = c.label + ".csv";
      WriteAggregateCsv(dir / file, spec, res.sweep.best_run.aggregate);
      double belief = 0.0;
      for (const MetricLog& log : res.sweep.best_run.logs) {
        belief += log.rows.back().belief_error;
      }
      belief /= static_cast<double>(res.sweep.best_run.logs.size());
      manifest << c.label << "," << file << ","
               << kPolicyNames.Name(c.policy) << ","
               << kEstimatorNames.Name(c.estimator) << ","
               << kTopologyNames.Name(c.topology) << ","
               << FormatDouble(spec.train.step.alpha0) << ","
               << FormatDouble(res.sweep.final_ema[res.sweep.best]) << ","
               << FormatDouble(belief) << "," << base.train.replications
               << "," << base.train.iterations << "\n";
      out << c.label << ": alpha0=" << spec.train.step.alpha0
          << " final EMA return=" << res.sweep.final_ema[res.sweep.best]
          << " final belief error=" << belief << "\n";
    }
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out << "wrote " << conditions.size() << " condition files and manifest to "
      << dir.string() << "\n";
  return 0;
}

int CmdValidate(const CliOptions& opts, std::ostream& out,
                std::ostream& err) {
  ExperimentSpec spec;
  if (auto code = LoadWithOverrides(opts, spec, err)) return *code;
  const std::vector<CheckResult> checks = ValidateSpec(spec);
  bool ok = true;
  for (const CheckResult& c : checks) {
    out << std::left << std::setw(26) << c.name << (c.pass ? "PASS  " : "FAIL  ")
        << c.detail << "\n";
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace npg
