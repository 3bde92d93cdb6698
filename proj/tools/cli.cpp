#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "expnormal/expnormal.hpp"

namespace expnormal::cli {

namespace {

struct CliConfig {
  std::string distribution;
  std::string mode;
  std::string suite;
  std::size_t k = 1;
  std::size_t n = 0;
  std::size_t J = 10000;
  std::size_t n_terms = 0;
  bool correction = false;
  std::string tail = "gaussian";
  std::string form = "centered";
  std::optional<std::uint64_t> seed;
  std::uint64_t stream_id = 0;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<double> step;
  std::string out_path;
  std::size_t moment_n = 1000000;
  unsigned workers = 1;
  bool deterministic = true;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TruncationConfig truncation_from(const CliConfig& c) {
  const auto tail = parse_tail_mode(c.tail);
  const auto form = parse_series_form(c.form);
  if (!tail) throw UsageError("--tail must be drop or gaussian");
  if (!form) throw UsageError("--form must be raw or centered");
  TruncationConfig cfg{c.J, *tail, *form};
  cfg.validate();
  return cfg;
}

std::vector<double> grid_from(const CliConfig& c) {
  if (!c.t_min || !c.t_max || !c.step) throw UsageError("grid requires --t-min, --t-max and --step");
  return make_grid(*c.t_min, *c.t_max, *c.step);
}

/// Writes to --out (resolved against the output-dir override) or to `out`.
void emit(const CliConfig& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::filesystem::path path(c.out_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path.string());
  file << text;
  if (!file) throw UsageError("failed writing " + path.string());
}

int cmd_sample(const CliConfig& c, std::ostream& out) {
  const auto dist = parse_distribution(c.distribution);
  if (!dist || (*dist != Distribution::expnormal_series && *dist != Distribution::expnormal_direct &&
                *dist != Distribution::root_factor && *dist != Distribution::root_product)) {
    throw UsageError("--dist must be one of expnormal-series, expnormal-direct, root-factor, root-product");
  }
  if (!c.seed) throw UsageError("sample requires --seed");
  if (c.n < 1) throw UsageError("--n must be at least 1");
  if (c.k < 1) throw UsageError("--k must be at least 1");
  SampleParams params;
  params.k = c.k;
  params.cfg = truncation_from(c);
  const SampleBatch batch = make_batch(*dist, params, c.n, *c.seed, c.stream_id, c.workers);

  std::ostringstream os;
  os << "# artifact: expnormal " << EXPNORMAL_VERSION << '\n'
     << "# distribution: " << to_string(*dist) << '\n'
     << "# seed: " << *c.seed << '\n'
     << "# stream_id: " << c.stream_id << '\n'
     << "# n: " << c.n << '\n';
  if (*dist != Distribution::expnormal_direct) {
    if (*dist != Distribution::expnormal_series) os << "# k: " << c.k << '\n';
    os << "# J: " << params.cfg.J << '\n'
       << "# tail: " << to_string(params.cfg.tail_mode) << '\n'
       << "# form: " << to_string(params.cfg.form) << '\n';
  }
  os << "# substream_chunk: " << kBatchChunk << '\n';
  if (!c.deterministic) os << "# timestamp: " << timestamp_utc() << '\n';
  os << "index,value\n";
  for (std::size_t i = 0; i < batch.values.size(); ++i) os << i << ',' << format_double(batch.values[i]) << '\n';
  emit(c, os.str(), out);
  return kExitOk;
}

int cmd_cf(const CliConfig& c, std::ostream& out) {
  const auto grid = grid_from(c);
  std::function<ComplexValue(double)> fn;
  bool reference = false;
  if (c.mode == "exact") {
    fn = cf_exact;
    reference = true;
  } else if (c.mode == "euler-product") {
    if (c.n_terms < 1) throw UsageError("euler-product mode requires --n-terms >= 1");
    fn = [&](double t) { return cf_euler_product(t, c.n_terms, c.correction); };
  } else if (c.mode == "factor") {
    if (c.k < 1) throw UsageError("factor mode requires --k >= 1");
    fn = [&](double t) { return cf_factor(t, c.k); };
  } else if (c.mode == "truncated") {
    if (c.k < 1) throw UsageError("truncated mode requires --k >= 1");
    const TruncationConfig cfg = truncation_from(c);
    fn = [cfg, k = c.k](double t) { return cf_truncated_series(t, cfg, k); };
  } else {
    throw UsageError("--mode must be one of exact, euler-product, factor, truncated");
  }

  std::ostringstream os;
  os << (reference ? "t,re,im,abs,abs_ref\n" : "t,re,im,abs\n");
  for (double t : grid) {
    const ComplexValue v = fn(t);
    os << format_double(t) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
       << format_double(std::abs(v));
    if (reference) os << ',' << format_double(1.0 / std::sqrt(std::cosh(0.5 * std::numbers::pi * t)));
    os << '\n';
  }
  emit(c, os.str(), out);
  return kExitOk;
}

int cmd_density(const CliConfig& c, std::ostream& out) {
  const auto grid = grid_from(c);
  std::ostringstream os;
  os << "u,p\n";
  for (double u : grid) os << format_double(u) << ',' << format_double(density_expnormal(u)) << '\n';
  emit(c, os.str(), out);
  return kExitOk;
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
  if (!is_suite_name(c.suite)) throw UsageError("unknown suite '" + c.suite + "'");
  if (suite_needs_seed(c.suite) && !c.seed) throw UsageError("suite '" + c.suite + "' requires --seed");
  SuiteConfig sc;
  sc.seed = suite_needs_seed(c.suite) ? c.seed : std::nullopt;
  sc.n = c.n == 0 ? sc.n : c.n;
  sc.moment_n = c.moment_n;
  sc.cfg = truncation_from(c);
  sc.workers = c.workers;
  const VerificationReport report = run_suite(c.suite, sc);
  auto json = to_json(report);
  if (!c.deterministic) json["timestamp"] = timestamp_utc();
  emit(c, json.dump(2) + "\n", out);
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

void add_truncation_flags(CLI::App* cmd, CliConfig& c) {
  cmd->add_option("--J", c.J, "Retained series terms j = 1..J")->check(CLI::PositiveNumber);
  cmd->add_option("--tail", c.tail, "Tail treatment: drop or gaussian");
  cmd->add_option("--form", c.form, "Series arrangement: raw or centered");
}

void add_output_flags(CLI::App* cmd, CliConfig& c) {
  cmd->add_option("--out", c.out_path, "Output file (default: stdout)");
  cmd->add_flag("--deterministic,!--no-deterministic", c.deterministic,
                "Suppress the timestamp field (default on)");
}

void add_grid_flags(CLI::App* cmd, CliConfig& c, const std::string& var) {
  cmd->add_option("--" + var + "-min", c.t_min, "First grid point");
  cmd->add_option("--" + var + "-max", c.t_max, "Last grid point");
  cmd->add_option("--step", c.step, "Grid spacing");
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Exp-normal distribution: exact characteristic functions, series samplers and "
               "factorization checks"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "Draw a batch as CSV");
  sample->add_option("--dist", c.distribution,
                     "expnormal-series | expnormal-direct | root-factor | root-product")
      ->required();
  sample->add_option("--n", c.n, "Number of draws")->required();
  sample->add_option("--seed", c.seed, "Generator seed (required)");
  sample->add_option("--stream-id", c.stream_id, "Stream id");
  sample->add_option("--k", c.k, "Number of root factors");
  sample->add_option("--workers", c.workers, "Worker threads (output does not depend on it)");
  add_truncation_flags(sample, c);
  add_output_flags(sample, c);

  auto* cf = app.add_subcommand("cf", "Evaluate a characteristic function on a grid");
  cf->add_option("--mode", c.mode, "exact | euler-product | factor | truncated")->required();
  cf->add_option("--n-terms", c.n_terms, "Euler-product factors");
  cf->add_flag("--correction", c.correction, "Apply the Euler-product tail correction");
  cf->add_option("--k", c.k, "Root order (factor, truncated)");
  add_grid_flags(cf, c, "t");
  add_truncation_flags(cf, c);
  add_output_flags(cf, c);

  auto* density = app.add_subcommand("density", "Evaluate the exp-normal density on a grid");
  add_grid_flags(density, c, "u");
  add_output_flags(density, c);

  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  verify->add_option("--suite", c.suite, "analytic | series | factorization | all")->required();
  verify->add_option("--seed", c.seed, "Generator seed (required except for analytic)");
  verify->add_option("--n", c.n, "Batch size per sampling check (default 100000)");
  verify->add_option("--moment-n", c.moment_n, "Direct draws for the moment check");
  verify->add_option("--workers", c.workers, "Worker threads (report does not depend on it)");
  add_truncation_flags(verify, c);
  add_output_flags(verify, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(c, out);
    if (cf->parsed()) return cmd_cf(c, out);
    if (density->parsed()) return cmd_density(c, out);
    return cmd_verify(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace expnormal::cli
