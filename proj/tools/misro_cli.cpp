// Command-line front end: instance generation, solving, acceptability
// checks, the brute-force oracle, DZN/JSON conversion, mitigation and the
// benchmark sweep.
//
// Exit codes: 0 solved/acceptable, 1 error, 2 infeasible/unacceptable,
// 3 deadline exceeded.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "misro/bench.hpp"
#include "misro/instances.hpp"
#include "misro/oracle.hpp"
#include "misro/side.hpp"
#include "misro/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDeadline = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MISRO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      misro::fail(misro::ErrorKind::kDomain,
                  std::string("MISRO_SEED is not an integer: ") + env);
    }
  }
  return misro::kDefaultSeed;
}

misro::Instance load_instance(const std::string& path) {
  const std::string text = misro::read_text_file(path);
  std::vector<std::string> warnings;
  misro::Instance inst = misro::parse_json(text, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return inst;
}

std::vector<misro::SideConstraint> load_side(const std::string& path,
                                             const misro::Instance& inst) {
  auto side = misro::parse_side_constraints_json(misro::read_text_file(path));
  misro::validate_side_constraints(inst, side);
  return side;
}

std::string fraction(const misro::RequirementCriticality& rc) {
  if (!rc.defined()) return "undefined";
  std::string text = std::to_string(rc.numerator) + "/" +
                     std::to_string(rc.denominator);
  auto [num, den] = rc.reduced();
  if (num != rc.numerator || den != rc.denominator) {
    text += " (= " + std::to_string(num) + "/" + std::to_string(den) + ")";
  }
  return text;
}

void print_criticality(const misro::Instance& inst,
                       const misro::CriticalityReport& report) {
  std::cout << "requirement criticality:\n";
  for (std::size_t i = 0; i < report.requirements.size(); ++i) {
    const auto& rc = report.requirements[i];
    std::cout << "  " << i << ": C_Q = " << fraction(rc)
              << ", C_ref = " << inst.thresholds[i] << "/100, "
              << (rc.acceptable ? "ok" : "violated") << "\n";
  }
  std::cout << "overall: "
            << (report.overall_acceptable ? "acceptable" : "not acceptable")
            << "\n";
}

void print_assignment(const misro::Assignment& a) {
  std::cout << "  j  l  s    Q\n";
  for (int j = 0; j < a.size(); ++j) {
    auto js = static_cast<std::size_t>(j);
    std::printf("%3d %2d %2d %4d\n", j, a.likelihood[js], a.severity[js],
                a.quant[js]);
  }
}

int print_outcome(const misro::Instance& inst,
                  const misro::SolveOutcome& outcome) {
  std::cout << "status: " << to_string(outcome.status) << "\n";
  if (outcome.solution) {
    const auto& sol = *outcome.solution;
    std::cout << "objective: " << sol.objective << " (" << sol.objective << "/"
              << misro::q_den(inst.mode) << ")\n";
    print_assignment(sol.assignment);
    print_criticality(inst, misro::calc_criticality(inst, sol.assignment));
  }
  if (outcome.status != misro::SolveStatus::kOptimal &&
      outcome.status != misro::SolveStatus::kInfeasible) {
    std::cout << "proven bound: " << outcome.bound << "\n";
  }
  std::cout << "nodes: " << outcome.stats.nodes
            << ", propagations: " << outcome.stats.propagations << "\n";
  switch (outcome.status) {
    case misro::SolveStatus::kOptimal:
    case misro::SolveStatus::kFeasibleNotProven:
      return kExitOk;
    case misro::SolveStatus::kInfeasible:
      return kExitInfeasible;
    default:
      return kExitDeadline;
  }
}

misro::BenchConfig load_bench_config(const std::string& path) {
  using json = nlohmann::json;
  json doc = json::parse(misro::read_text_file(path), nullptr, false);
  if (doc.is_discarded()) {
    misro::fail(misro::ErrorKind::kParse, "malformed benchmark config");
  }
  misro::BenchConfig cfg;
  if (doc.contains("alpha_set")) cfg.alpha_set = doc["alpha_set"].get<std::vector<int>>();
  if (doc.contains("beta_set")) cfg.beta_set = doc["beta_set"].get<std::vector<int>>();
  if (doc.contains("versions")) cfg.versions = doc["versions"].get<int>();
  if (doc.contains("modes")) {
    cfg.modes.clear();
    for (int v : doc["modes"].get<std::vector<int>>()) {
      cfg.modes.push_back(misro::mode_from_int(v));
    }
  }
  if (doc.contains("strategies")) {
    cfg.strategies.clear();
    for (const auto& s : doc["strategies"]) {
      cfg.strategies.push_back(
          misro::strategy_from_string(s.get<std::string>()));
    }
  }
  if (doc.contains("timeout_s")) {
    cfg.timeout = misro::Seconds(doc["timeout_s"].get<double>());
  }
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("workers")) cfg.parallel_workers = doc["workers"].get<int>();
  if (doc.contains("oracle_cap")) {
    cfg.oracle_cap = doc["oracle_cap"].get<std::int64_t>();
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MISRO: exact max-min risk quantification under "
               "per-requirement criticality thresholds"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
  int gen_alpha = 0, gen_beta = 0, gen_gamma = 1, gen_mode = 2;
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  int c_min = 20, c_max = 90;
  std::string gen_out;
  bool gen_dzn = false;
  gen->add_option("--alpha", gen_alpha, "Number of risks")->required();
  gen->add_option("--beta", gen_beta, "Number of ethical requirements")->required();
  gen->add_option("--gamma", gen_gamma, "Version index (>= 1)");
  gen->add_option("--mode", gen_mode, "Quantification mode: 1 linear, 2 bilinear, 3 quadratic")
      ->check(CLI::Range(1, 3));
  gen->add_option("--seed", gen_seed, "Generator seed (default: MISRO_SEED or 42)")
      ->each([&gen_seed_set](const std::string&) { gen_seed_set = true; });
  gen->add_option("--c-min", c_min, "Threshold lower bound");
  gen->add_option("--c-max", c_max, "Threshold upper bound");
  gen->add_option("-o,--output", gen_out, "Output file")->required();
  gen->add_flag("--dzn", gen_dzn, "Write MiniZinc data instead of JSON");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  std::string solve_file, solve_strategy, solve_side;
  double solve_timeout = 0;
  bool solve_saturate = false;
  solve->add_option("file", solve_file, "Instance (JSON)")->required();
  solve->add_option("--strategy", solve_strategy,
                    "fastpath (default without constraints) or bnb");
  solve->add_option("--constraints", solve_side, "Side-constraint file (JSON)");
  solve->add_option("--timeout", solve_timeout, "Deadline in seconds");
  solve->add_flag("--saturate", solve_saturate,
                  "Greedily raise quantifications after solving");

  // check
  auto* check = app.add_subcommand("check", "Check acceptability of an assignment");
  std::string check_file, check_assignment;
  check->add_option("file", check_file, "Instance (JSON)")->required();
  check->add_option("--assignment", check_assignment, "Assignment file (JSON)")
      ->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force ground truth");
  std::string oracle_file, oracle_side;
  std::int64_t oracle_cap = misro::kDefaultOracleCap;
  oracle_cmd->add_option("file", oracle_file, "Instance (JSON)")->required();
  oracle_cmd->add_option("--constraints", oracle_side, "Side-constraint file");
  oracle_cmd->add_option("--cap", oracle_cap, "Assignment-count cap");

  // export-dzn / import-dzn
  auto* exp = app.add_subcommand("export-dzn", "Convert native JSON to DZN");
  std::string exp_in, exp_out;
  exp->add_option("file", exp_in, "Instance (JSON)")->required();
  exp->add_option("-o,--output", exp_out, "Output DZN file")->required();

  auto* imp = app.add_subcommand("import-dzn", "Convert DZN to native JSON");
  std::string imp_in, imp_out;
  imp->add_option("file", imp_in, "Instance (DZN)")->required();
  imp->add_option("-o,--output", imp_out, "Output JSON file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run the benchmark sweep");
  std::string bench_cfg, bench_out = "bench_out";
  int bench_workers = 0;
  bench->add_option("--config", bench_cfg, "Config file (JSON)");
  bench->add_option("-o,--output", bench_out, "Output directory");
  bench->add_option("--workers", bench_workers, "Parallel workers");

  // mitigate
  auto* mitigate = app.add_subcommand("mitigate", "Apply a mitigation action");
  std::string mit_file, mit_assignment;
  int mit_risk = 0, mit_dl = 0, mit_ds = 0;
  mitigate->add_option("file", mit_file, "Instance (JSON)")->required();
  mitigate->add_option("--assignment", mit_assignment, "Assignment file")->required();
  mitigate->add_option("--risk", mit_risk, "Risk index (0-based)")->required();
  mitigate->add_option("--dl", mit_dl, "Likelihood reduction")->required();
  mitigate->add_option("--ds", mit_ds, "Severity reduction")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      misro::GenSpec spec;
      spec.alpha = gen_alpha;
      spec.beta = gen_beta;
      spec.gamma = gen_gamma;
      spec.mode = misro::mode_from_int(gen_mode);
      spec.seed = gen_seed_set ? gen_seed : default_seed();
      spec.c_lo = c_min;
      spec.c_hi = c_max;
      misro::Instance inst = misro::generate(spec);
      misro::write_text_file(gen_out, gen_dzn ? misro::emit_dzn(inst)
                                              : misro::emit_json(inst));
      std::cout << "wrote " << inst.name << " to " << gen_out << "\n";
      return kExitOk;
    }

    if (*solve) {
      misro::Instance inst = load_instance(solve_file);
      std::vector<misro::SideConstraint> side;
      if (!solve_side.empty()) side = load_side(solve_side, inst);
      std::optional<misro::Seconds> deadline;
      if (solve_timeout > 0) deadline = misro::Seconds(solve_timeout);
      if (solve_strategy.empty()) {
        solve_strategy = side.empty() ? "fastpath" : "bnb";
      }

      misro::SolveOutcome outcome;
      if (solve_strategy == "fastpath") {
        outcome = misro::solve_fastpath(inst, side);
      } else if (solve_strategy == "bnb") {
        outcome = misro::solve_bnb(inst, side, deadline);
      } else {
        misro::fail(misro::ErrorKind::kDomain,
                    "unknown strategy '" + solve_strategy + "'");
      }
      if (solve_saturate && outcome.solution) {
        auto domains = misro::compile_risk_domains(inst, side);
        outcome.solution->assignment = misro::greedy_saturate_with_domains(
            inst, *outcome.solution, domains);
      }
      return print_outcome(inst, outcome);
    }

    if (*check) {
      misro::Instance inst = load_instance(check_file);
      misro::Assignment a = misro::parse_assignment_json(
          misro::read_text_file(check_assignment), inst.mode);
      auto report = misro::calc_criticality(inst, a);
      print_assignment(a);
      print_criticality(inst, report);
      return report.overall_acceptable ? kExitOk : kExitInfeasible;
    }

    if (*oracle_cmd) {
      misro::Instance inst = load_instance(oracle_file);
      std::vector<misro::SideConstraint> side;
      if (!oracle_side.empty()) side = load_side(oracle_side, inst);
      return print_outcome(inst, misro::brute_force(inst, side, oracle_cap));
    }

    if (*exp) {
      misro::write_text_file(exp_out,
                             misro::emit_dzn(load_instance(exp_in)));
      std::cout << "wrote " << exp_out << "\n";
      return kExitOk;
    }

    if (*imp) {
      misro::Instance inst =
          misro::parse_dzn(misro::read_text_file(imp_in));
      misro::write_text_file(imp_out, misro::emit_json(inst));
      std::cout << "wrote " << imp_out << "\n";
      return kExitOk;
    }

    if (*bench) {
      misro::BenchConfig cfg;
      if (!bench_cfg.empty()) cfg = load_bench_config(bench_cfg);
      if (bench_workers > 0) cfg.parallel_workers = bench_workers;
      if (bench_cfg.empty()) cfg.seed = default_seed();
      cfg.output_dir = bench_out;
      misro::BenchResult result = misro::run_suite(cfg);
      std::cout << "wrote " << result.records.size() << " records to "
                << bench_out << "/results.csv\n";
      return kExitOk;
    }

    if (*mitigate) {
      misro::Instance inst = load_instance(mit_file);
      misro::Assignment before = misro::parse_assignment_json(
          misro::read_text_file(mit_assignment), inst.mode);
      misro::MitigationAction act{mit_risk, mit_dl, mit_ds};
      misro::Assignment after = misro::apply_mitigation(before, act, inst.mode);
      auto js = static_cast<std::size_t>(mit_risk);
      std::cout << "risk " << mit_risk << ": Q " << before.quant[js] << " -> "
                << after.quant[js] << "\n";
      std::cout << "before:\n";
      print_criticality(inst, misro::calc_criticality(inst, before));
      std::cout << "after:\n";
      auto report = misro::calc_criticality(inst, after);
      print_criticality(inst, report);
      return report.overall_acceptable ? kExitOk : kExitInfeasible;
    }
  } catch (const misro::Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
