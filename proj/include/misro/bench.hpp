#pragma once

#include <optional>
#include <string>
#include <vector>

#include "misro/instances.hpp"
#include "misro/oracle.hpp"
#include "misro/solvers.hpp"

namespace misro {

enum class Strategy { kFastpath, kBnb, kOracle };

const char* to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

// Sweep configuration. Defaults reproduce the benchmark protocol: the
// alpha x beta grid (80 configurations), 10 randomized versions each, all
// three quantification modes, 300 s per solve.
struct BenchConfig {
  std::vector<int> alpha_set = {5, 10, 50, 100, 150, 200, 250, 300, 400, 500};
  std::vector<int> beta_set = {4, 50, 100, 150, 200, 250, 300, 400};
  int versions = 10;
  std::vector<Mode> modes = {Mode::kLinear, Mode::kBilinear, Mode::kQuadratic};
  std::vector<Strategy> strategies = {Strategy::kFastpath};
  Seconds timeout{300.0};
  std::uint64_t seed = kDefaultSeed;
  int parallel_workers = 1;
  std::int64_t oracle_cap = kDefaultOracleCap;
  std::string output_dir;  // empty: keep results in memory only
};

// One CSV row. quality_tenths carries the solution-quality ratio in tenths
// of a percent (1000*best/optimum, half-up), present only when the optimum
// is known from some strategy of the same run.
struct BenchRecord {
  std::string instance;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  Mode mode = Mode::kLinear;
  Strategy strategy = Strategy::kFastpath;
  std::string status;
  std::optional<int> best_minq;
  std::optional<int> optimum_minq;
  std::optional<int> quality_tenths;
  double time_ms = 0.0;
  std::optional<std::int64_t> nodes;
};

// Solution quality as a percentage with one half-up decimal: 100*best/optimum.
// Preconditions: optimum >= 1 and 0 <= best <= optimum (kDomain); a best
// above the optimum signals a soundness bug (kInternal).
int quality_tenths(int best, int optimum);
double quality(int best, int optimum);

struct BenchResult {
  std::vector<BenchRecord> records;
  std::string results_csv;
  std::string summary_csv;
};

// Runs the whole sweep. Instances are generated deterministically from
// (config, seed); each strategy solves every instance under the timeout.
// Solve failures (e.g. the oracle cap) become `error` status rows; they
// never abort the sweep. With parallel_workers > 1 the instances are
// distributed across worker threads (each solve stays single-threaded) and
// the records are reassembled in deterministic (instance, strategy) order,
// so repeated runs differ at most in the time_ms and nodes columns. When
// output_dir is set, writes results.csv and summary.csv there.
BenchResult run_suite(const BenchConfig& cfg);

std::string results_csv_header();

// Strips the timing columns (time_ms, nodes) from a results CSV, for
// byte-level reproducibility comparisons.
std::string strip_timing_columns(const std::string& csv);

}  // namespace misro
