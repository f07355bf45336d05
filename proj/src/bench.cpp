#include "misro/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "misro/oracle.hpp"

namespace misro {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kFastpath: return "fastpath";
    case Strategy::kBnb: return "bnb";
    case Strategy::kOracle: return "oracle";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "fastpath") return Strategy::kFastpath;
  if (name == "bnb") return Strategy::kBnb;
  if (name == "oracle") return Strategy::kOracle;
  fail(ErrorKind::kDomain, "unknown strategy '" + name +
                               "' (expected fastpath, bnb or oracle)");
}

int quality_tenths(int best, int optimum) {
  if (optimum < 1) {
    fail(ErrorKind::kDomain,
         "quality needs a positive optimum, got " + std::to_string(optimum));
  }
  if (best < 0) {
    fail(ErrorKind::kDomain,
         "quality needs a non-negative best value, got " + std::to_string(best));
  }
  if (best > optimum) {
    fail(ErrorKind::kInternal, "best objective " + std::to_string(best) +
                                   " exceeds the proven optimum " +
                                   std::to_string(optimum) +
                                   " (soundness bug)");
  }
  // 1000*best/optimum rounded half-up.
  const std::int64_t num = 2000LL * best + optimum;
  return static_cast<int>(num / (2LL * optimum));
}

double quality(int best, int optimum) {
  return static_cast<double>(quality_tenths(best, optimum)) / 10.0;
}

namespace {

struct Task {
  GenSpec spec;
};

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

std::string format_tenths(int tenths) {
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

void check_config(const BenchConfig& cfg) {
  if (cfg.alpha_set.empty() || cfg.beta_set.empty() || cfg.modes.empty() ||
      cfg.strategies.empty()) {
    fail(ErrorKind::kDomain, "benchmark sets must be nonempty");
  }
  if (cfg.versions < 1) fail(ErrorKind::kDomain, "versions must be >= 1");
  if (cfg.timeout.count() <= 0) fail(ErrorKind::kDomain, "timeout must be > 0");
  if (cfg.parallel_workers < 1) {
    fail(ErrorKind::kDomain, "parallel_workers must be >= 1");
  }
}

// Runs every strategy on one instance and finalizes quality against the
// optimum proven within this task.
std::vector<BenchRecord> run_task(const BenchConfig& cfg, const Task& task) {
  const Instance inst = generate(task.spec);
  std::vector<BenchRecord> records;
  records.reserve(cfg.strategies.size());

  std::optional<int> proven_optimum;
  bool proven_infeasible = false;

  for (Strategy strategy : cfg.strategies) {
    BenchRecord rec;
    rec.instance = inst.name;
    rec.alpha = task.spec.alpha;
    rec.beta = task.spec.beta;
    rec.gamma = task.spec.gamma;
    rec.mode = inst.mode;
    rec.strategy = strategy;

    const auto start = std::chrono::steady_clock::now();
    try {
      SolveOutcome outcome;
      switch (strategy) {
        case Strategy::kFastpath:
          outcome = solve_fastpath(inst);
          break;
        case Strategy::kBnb:
          outcome = solve_bnb(inst, {}, cfg.timeout);
          break;
        case Strategy::kOracle:
          outcome = brute_force(inst, {}, cfg.oracle_cap);
          break;
      }
      rec.status = to_string(outcome.status);
      rec.nodes = outcome.stats.nodes;
      if (outcome.solution) {
        rec.best_minq = outcome.solution->objective;
        if (!is_acceptable(inst, outcome.solution->assignment)) {
          fail(ErrorKind::kInternal, "strategy " +
                                         std::string(to_string(strategy)) +
                                         " returned an unacceptable solution "
                                         "for " +
                                         inst.name);
        }
      }
      if (outcome.status == SolveStatus::kOptimal) {
        if (proven_optimum && *proven_optimum != outcome.solution->objective) {
          fail(ErrorKind::kInternal,
               "strategies disagree on the optimum of " + inst.name + ": " +
                   std::to_string(*proven_optimum) + " vs " +
                   std::to_string(outcome.solution->objective));
        }
        proven_optimum = outcome.solution->objective;
      }
      if (outcome.status == SolveStatus::kInfeasible) proven_infeasible = true;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInternal) throw;
      rec.status = "error";
    }
    rec.time_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    records.push_back(std::move(rec));
  }

  if (proven_optimum && proven_infeasible) {
    fail(ErrorKind::kInternal,
         "strategies disagree on feasibility of " + inst.name);
  }
  if (proven_optimum) {
    for (BenchRecord& rec : records) {
      rec.optimum_minq = proven_optimum;
      if (rec.best_minq) {
        rec.quality_tenths = quality_tenths(*rec.best_minq, *proven_optimum);
      }
    }
  }
  return records;
}

}  // namespace

std::string results_csv_header() {
  return "instance,alpha,beta,gamma,mode,strategy,status,best_minq,"
         "optimum_minq,quality_pct,time_ms,nodes";
}

namespace {

std::string results_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << results_csv_header() << "\n";
  for (const BenchRecord& r : records) {
    out << r.instance << ',' << r.alpha << ',' << r.beta << ',' << r.gamma
        << ',' << mode_name(r.mode) << ',' << to_string(r.strategy) << ','
        << r.status << ',';
    if (r.best_minq) out << *r.best_minq;
    out << ',';
    if (r.optimum_minq) out << *r.optimum_minq;
    out << ',';
    if (r.quality_tenths) out << format_tenths(*r.quality_tenths);
    out << ',' << format_ms(r.time_ms) << ',';
    if (r.nodes) out << *r.nodes;
    out << '\n';
  }
  return out.str();
}

// Aggregates per (alpha, beta, mode, strategy) over the gamma versions:
// counts by outcome plus mean/median time over the solved runs (timeouts and
// errors reported separately, not averaged in).
std::string summary_csv(const BenchConfig& cfg,
                        const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "alpha,beta,mode,strategy,runs,optimal,timeouts,infeasible,errors,"
         "mean_time_ms,median_time_ms\n";
  for (int alpha : cfg.alpha_set) {
    for (int beta : cfg.beta_set) {
      for (Mode mode : cfg.modes) {
        for (Strategy strategy : cfg.strategies) {
          int runs = 0, optimal = 0, timeouts = 0, infeasible = 0, errors = 0;
          std::vector<double> solved_times;
          for (const BenchRecord& r : records) {
            if (r.alpha != alpha || r.beta != beta || r.mode != mode ||
                r.strategy != strategy) {
              continue;
            }
            ++runs;
            if (r.status == to_string(SolveStatus::kOptimal)) {
              ++optimal;
              solved_times.push_back(r.time_ms);
            } else if (r.status == to_string(SolveStatus::kInfeasible)) {
              ++infeasible;
              solved_times.push_back(r.time_ms);
            } else if (r.status == "error") {
              ++errors;
            } else {
              ++timeouts;
            }
          }
          out << alpha << ',' << beta << ',' << mode_name(mode) << ','
              << to_string(strategy) << ',' << runs << ',' << optimal << ','
              << timeouts << ',' << infeasible << ',' << errors << ',';
          if (!solved_times.empty()) {
            std::sort(solved_times.begin(), solved_times.end());
            double mean = 0;
            for (double t : solved_times) mean += t;
            mean /= static_cast<double>(solved_times.size());
            const std::size_t half = solved_times.size() / 2;
            const double median =
                solved_times.size() % 2
                    ? solved_times[half]
                    : (solved_times[half - 1] + solved_times[half]) / 2.0;
            out << format_ms(mean) << ',' << format_ms(median);
          } else {
            out << ',';
          }
          out << '\n';
        }
      }
    }
  }
  return out.str();
}

}  // namespace

BenchResult run_suite(const BenchConfig& cfg) {
  check_config(cfg);

  std::vector<Task> tasks;
  for (int alpha : cfg.alpha_set) {
    for (int beta : cfg.beta_set) {
      for (int gamma = 1; gamma <= cfg.versions; ++gamma) {
        for (Mode mode : cfg.modes) {
          GenSpec spec;
          spec.alpha = alpha;
          spec.beta = beta;
          spec.gamma = gamma;
          spec.mode = mode;
          spec.seed = cfg.seed;
          tasks.push_back({spec});
        }
      }
    }
  }

  // Slot per task keeps the emission order deterministic regardless of
  // worker scheduling.
  std::vector<std::vector<BenchRecord>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        slots[k] = run_task(cfg, tasks[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::min<int>(cfg.parallel_workers,
                                    static_cast<int>(tasks.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  BenchResult result;
  for (auto& slot : slots) {
    for (auto& rec : slot) result.records.push_back(std::move(rec));
  }
  result.results_csv = results_csv(result.records);
  result.summary_csv = summary_csv(cfg, result.records);

  if (!cfg.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) {
      fail(ErrorKind::kIo,
           "cannot create output directory '" + cfg.output_dir + "'");
    }
    write_text_file(cfg.output_dir + "/results.csv", result.results_csv);
    write_text_file(cfg.output_dir + "/summary.csv", result.summary_csv);
  }
  return result;
}

std::string strip_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    // Drop the last two comma-separated fields (no field is ever quoted).
    std::size_t last = line.rfind(',');
    if (last != std::string::npos) {
      std::size_t second = line.rfind(',', last - 1);
      if (second != std::string::npos) line.erase(second);
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace misro
