// Acceptance suite: exercises every acceptance criterion end to end and
// prints one pass/fail line per criterion. Exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "misro/bench.hpp"
#include "misro/instances.hpp"
#include "misro/oracle.hpp"
#include "misro/rng.hpp"
#include "misro/solvers.hpp"
#include "test_util.hpp"

using namespace misro;
using testutil::random_constraint;
using testutil::random_instance;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string name;
  std::function<std::string()> run;  // returns detail, throws on failure
};

struct CriterionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& detail) {
  if (!condition) throw CriterionFailure(detail);
}

std::string count(std::size_t n, const char* what) {
  return std::to_string(n) + " " + what;
}

// --- criterion 1: fastpath = bnb = oracle on small unconstrained instances
std::string oracle_equivalence_unconstrained() {
  const auto start = Clock::now();
  SplitMix64 rng(0xACCE97ULL);
  int optimal = 0, infeasible = 0;
  const int rounds = 300;
  for (int round = 0; round < rounds; ++round) {
    // Thresholds over the full [0,99] range so infeasible cases appear too.
    Instance inst = random_instance(rng, 4, 6, 0, 99);
    auto fast = solve_fastpath(inst);
    auto exact = solve_bnb(inst);
    auto truth = brute_force(inst);
    require(fast.status == truth.status && exact.status == truth.status,
            inst.name + ": status disagreement");
    if (truth.status == SolveStatus::kOptimal) {
      ++optimal;
      require(fast.solution->objective == truth.solution->objective &&
                  exact.solution->objective == truth.solution->objective,
              inst.name + ": objective disagreement");
      require(is_acceptable(inst, fast.solution->assignment) &&
                  is_acceptable(inst, exact.solution->assignment),
              inst.name + ": solver returned an unacceptable assignment");
    } else {
      ++infeasible;
    }
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  require(elapsed < 300.0, "runtime budget exceeded: " + std::to_string(elapsed) + " s");
  std::ostringstream detail;
  detail << rounds << " instances (" << optimal << " optimal, " << infeasible
         << " infeasible) agree across all three strategies in "
         << static_cast<int>(elapsed * 1000) << " ms";
  return detail.str();
}

// --- criterion 2: bnb = oracle under random side constraints
std::string oracle_equivalence_constrained() {
  SplitMix64 rng(0x51DEULL);
  int optimal = 0, infeasible = 0;
  const int rounds = 200;
  for (int round = 0; round < rounds; ++round) {
    Instance inst = random_instance(rng, 4, 6, 0, 99);
    std::vector<SideConstraint> side;
    const int k = 1 + static_cast<int>(rng.next() % 3);
    for (int c = 0; c < k; ++c) side.push_back(random_constraint(rng, inst));

    auto exact = solve_bnb(inst, side);
    auto truth = brute_force(inst, side);
    require(exact.status == truth.status,
            inst.name + ": status disagreement under side constraints");
    if (truth.status == SolveStatus::kOptimal) {
      ++optimal;
      require(exact.solution->objective == truth.solution->objective,
              inst.name + ": objective disagreement under side constraints");
    } else {
      ++infeasible;
    }
  }
  require(infeasible > 0, "sample never exercised infeasibility");
  std::ostringstream detail;
  detail << rounds << " constrained instances agree (" << optimal
         << " optimal, " << infeasible << " infeasible)";
  return detail.str();
}

// --- criterion 3: closed form equals search at alpha = beta = 50
std::string analytic_collapse() {
  SplitMix64 rng(0xC011A95EULL);
  const int rounds = 100;
  for (int round = 0; round < rounds; ++round) {
    GenSpec spec;
    spec.alpha = 50;
    spec.beta = 50;
    spec.gamma = 1 + round;
    spec.mode = mode_from_int(1 + round % 3);
    spec.seed = rng.next();
    Instance inst = generate(spec);

    // Closed form, recomputed here from first principles.
    const AchievableSet all = achievable_values(inst.mode, full_level_pairs());
    std::optional<int> min_c;
    for (int i = 0; i < inst.m; ++i) {
      if (inst.lambda[i] > 0 && (!min_c || inst.thresholds[i] < *min_c)) {
        min_c = inst.thresholds[i];
      }
    }
    std::optional<int> closed_form =
        min_c ? all.largest_not_above(
                    static_cast<std::int64_t>(q_den(inst.mode)) * *min_c / 100)
              : std::optional<int>(q_den(inst.mode));

    auto exact = solve_bnb(inst);
    require(closed_form.has_value() ==
                (exact.status == SolveStatus::kOptimal),
            inst.name + ": feasibility disagreement");
    if (closed_form) {
      require(*closed_form == exact.solution->objective,
              inst.name + ": closed form " + std::to_string(*closed_form) +
                  " != search " +
                  std::to_string(exact.solution->objective));
    }
  }
  return count(rounds, "50x50 instances: closed form == search objective");
}

// --- criterion 4: the full default sweep under the fast path
std::string protocol_reproduction() {
  const auto start = Clock::now();
  BenchConfig cfg;  // default protocol: 80 configurations x 10 versions
  cfg.strategies = {Strategy::kFastpath};
  cfg.parallel_workers = 4;
  BenchResult result = run_suite(cfg);

  const std::size_t expected = 80u * 10u * 3u;
  require(result.records.size() == expected,
          "row count " + std::to_string(result.records.size()) + " != " +
              std::to_string(expected));
  double max_ms = 0;
  for (const auto& rec : result.records) {
    require(rec.status == "optimal",
            rec.instance + " (" + std::string(mode_name(rec.mode)) +
                "): status " + rec.status);
    max_ms = std::max(max_ms, rec.time_ms);
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  require(max_ms < 100.0, "slowest fast-path solve took " +
                              std::to_string(max_ms) + " ms (budget 100 ms)");
  require(elapsed < 600.0, "sweep wall time " + std::to_string(elapsed) +
                               " s exceeds 10 min");
  std::ostringstream detail;
  detail << expected << " solves, zero timeouts, zero infeasible; slowest "
         << static_cast<int>(max_ms * 1000) / 1000.0 << " ms, sweep "
         << static_cast<int>(elapsed * 1000) << " ms";
  return detail.str();
}

// --- criterion 5: constrained search scales to 100x100 within the timeout
std::string bnb_scaling() {
  SplitMix64 rng(0xB14BULL);
  const int rounds = 30;
  int proven = 0;
  double max_s = 0;
  for (int round = 0; round < rounds; ++round) {
    GenSpec spec;
    spec.alpha = 100;
    spec.beta = 100;
    spec.gamma = 1 + round;
    spec.mode = mode_from_int(1 + round % 3);
    spec.seed = rng.next();
    Instance inst = generate(spec);
    std::vector<SideConstraint> side;
    for (int c = 0; c < 5; ++c) side.push_back(random_constraint(rng, inst));

    auto outcome = solve_bnb(inst, side, Seconds(300.0));
    max_s = std::max(max_s, outcome.stats.wall_seconds);
    if (outcome.status == SolveStatus::kOptimal ||
        outcome.status == SolveStatus::kInfeasible) {
      ++proven;
      if (outcome.solution) {
        require(is_acceptable(inst, outcome.solution->assignment),
                inst.name + ": unacceptable solution");
      }
    }
  }
  require(proven * 100 >= rounds * 95,
          "only " + std::to_string(proven) + "/30 solved to proof");
  std::ostringstream detail;
  detail << proven << "/30 instances proven within 300 s; slowest "
         << max_s * 1000 << " ms";
  return detail.str();
}

// --- criterion 6: quality-ratio semantics
std::string quality_metric() {
  require(quality(18, 18) == 100.0, "optimal must be exactly 100.0");
  require(quality(9, 18) == 50.0, "half must be exactly 50.0");
  require(quality(16, 18) == 88.9, "16/18 must round to 88.9");
  for (int optimum : {1, 7, 18, 36, 216}) {
    int prev = -1;
    for (int best = 0; best <= optimum; ++best) {
      int t = quality_tenths(best, optimum);
      require(t >= prev, "quality not monotone in best");
      prev = t;
    }
    require(prev == 1000, "quality at the optimum must be 100.0");
  }
  bool threw = false;
  try {
    quality(19, 18);
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::kInternal;
  }
  require(threw, "best > optimum must raise an internal-consistency error");
  return "exact 100.0/50.0, half-up decimals, monotone, soundness guard";
}

// --- criterion 7: codec laws over 1000 generated instances
std::string codec_laws() {
  SplitMix64 rng(0xC0DECULL);
  const int rounds = 1000;
  for (int round = 0; round < rounds; ++round) {
    Instance inst = random_instance(rng, 12, 12, 0, 99);
    Instance via_dzn = parse_dzn(emit_dzn(inst));
    require(via_dzn.same_problem(inst), inst.name + ": DZN round trip drifted");
    Instance via_json = parse_json(emit_json(inst));
    require(via_json == inst, inst.name + ": JSON round trip drifted");
  }

  auto expect_kind = [](ErrorKind kind, const std::function<void()>& fn,
                        const std::string& what) {
    try {
      fn();
    } catch (const Error& e) {
      require(e.kind() == kind, what + ": wrong error class (" +
                                    to_string(e.kind()) + ")");
      return;
    }
    throw CriterionFailure(what + ": no error raised");
  };
  expect_kind(ErrorKind::kSchema,
              [] {
                parse_dzn("mode = 2; m = 1; n = 3; max_l = 6; max_s = 6;\n"
                          "C = [50];\nM = [| 10, 2 |];\n");
              },
              "DZN dimension mismatch");
  expect_kind(ErrorKind::kRange,
              [] {
                parse_dzn("mode = 2; m = 1; n = 1; max_l = 6; max_s = 6;\n"
                          "C = [-1];\nM = [| 10 |];\n");
              },
              "DZN out-of-range entry");
  expect_kind(ErrorKind::kParse, [] { parse_dzn("mode = 2\nm = 1;\n"); },
              "DZN missing semicolon");
  expect_kind(ErrorKind::kSchema,
              [] {
                parse_dzn("mode = 2; n = 1; max_l = 6; max_s = 6;\n"
                          "C = [50];\nM = [| 10 |];\n");
              },
              "DZN missing declaration");
  expect_kind(ErrorKind::kParse, [] { parse_json("{broken"); },
              "JSON malformed document");
  expect_kind(ErrorKind::kSchema,
              [] { parse_json(R"({"mode": 2, "m": 1, "n": 1, "C": [50]})"); },
              "JSON missing matrix");
  expect_kind(ErrorKind::kRange,
              [] {
                parse_json(
                    R"({"mode": 2, "m": 1, "n": 1, "C": [150], "M": [[1]]})");
              },
              "JSON out-of-range threshold");
  return count(rounds, "instances round-trip both codecs; error classes hold");
}

// --- criterion 8: structural invariants
std::string invariant_suite() {
  // Monotonicity of quantify over all 36 pairs per mode.
  for (Mode mode : {Mode::kLinear, Mode::kBilinear, Mode::kQuadratic}) {
    for (int l = 1; l <= 6; ++l) {
      for (int s = 1; s <= 6; ++s) {
        if (l < 6) {
          require(quantify(mode, l + 1, s) > quantify(mode, l, s),
                  "quantify not increasing in likelihood");
        }
        if (s < 6) {
          require(quantify(mode, l, s + 1) > quantify(mode, l, s),
                  "quantify not increasing in severity");
        }
      }
    }
  }

  // Mitigation strictly decreases and floors error out.
  auto a = make_assignment(Mode::kQuadratic, {5, 1}, {5, 1});
  require(apply_mitigation(a, {0, 0, 2}, Mode::kQuadratic).quant[0] == 45,
          "mitigation arithmetic");
  bool floored = false;
  try {
    apply_mitigation(a, {1, 1, 0}, Mode::kQuadratic);
  } catch (const Error&) {
    floored = true;
  }
  require(floored, "floor violation must throw");
  bool noop = false;
  try {
    apply_mitigation(a, {0, 0, 0}, Mode::kQuadratic);
  } catch (const Error&) {
    noop = true;
  }
  require(noop, "no-op mitigation must throw");

  // Row scaling invariance.
  SplitMix64 rng(0x1471ULL);
  for (int round = 0; round < 50; ++round) {
    const int k = 2 + static_cast<int>(rng.next() % 4);
    std::vector<int> row(3), scaled(3);
    for (int j = 0; j < 3; ++j) {
      row[j] = static_cast<int>(rng.next() % 3);
      scaled[j] = row[j] * k;
    }
    if (*std::max_element(scaled.begin(), scaled.end()) > kWeightMax) continue;
    const int c = rng.next_in(0, 99);
    Instance base = make_instance(Mode::kBilinear, {row}, {c});
    Instance stretched = make_instance(Mode::kBilinear, {scaled}, {c});
    std::vector<int> l(3), s(3);
    for (int j = 0; j < 3; ++j) {
      l[j] = rng.next_in(1, 6);
      s[j] = rng.next_in(1, 6);
    }
    auto assignment = make_assignment(Mode::kBilinear, l, s);
    require(is_acceptable(base, assignment) ==
                is_acceptable(stretched, assignment),
            "row scaling changed acceptability");
  }

  // Saturation: full quantification pins criticality at exactly 1.
  for (Mode mode : {Mode::kLinear, Mode::kBilinear, Mode::kQuadratic}) {
    Instance inst = random_instance(rng, 6, 6, 0, 99);
    Instance remode = make_instance(mode, inst.weights, inst.thresholds);
    auto full = make_assignment(
        mode, std::vector<int>(remode.n, 6), std::vector<int>(remode.n, 6));
    for (const auto& rc : calc_criticality(remode, full).requirements) {
      if (rc.defined()) {
        require(rc.numerator == rc.denominator, "saturated C_Q must equal 1");
      }
    }
  }

  // P5 anti-monotonicity over 100 instance/constraint pairs.
  for (int round = 0; round < 100; ++round) {
    Instance inst = random_instance(rng, 4, 4, 10, 99);
    auto base = solve_bnb(inst);
    auto constrained = solve_bnb(inst, {random_constraint(rng, inst)});
    if (base.status == SolveStatus::kInfeasible) {
      require(constrained.status == SolveStatus::kInfeasible,
              "constraint resurrected an infeasible instance");
    } else if (constrained.status == SolveStatus::kOptimal) {
      require(constrained.solution->objective <= base.solution->objective,
              "side constraint raised the optimum");
    }
  }

  // Greedy dominance and idempotence.
  for (int round = 0; round < 50; ++round) {
    Instance inst = random_instance(rng, 6, 6, 20, 99);
    auto base = solve_fastpath(inst);
    require(base.status == SolveStatus::kOptimal,
            "generator feasibility guarantee (P4) violated");
    Assignment once = greedy_saturate(inst, *base.solution);
    require(is_acceptable(inst, once), "saturated assignment unacceptable");
    int min_q = q_den(inst.mode);
    for (int j = 0; j < inst.n; ++j) {
      require(once.quant[j] >= base.solution->assignment.quant[j],
              "saturation regressed a coordinate");
      min_q = std::min(min_q, once.quant[j]);
    }
    require(min_q == base.solution->objective, "saturation moved the objective");
    Solution fixed{once, base.solution->objective, true};
    require(greedy_saturate(inst, fixed) == once, "saturation not idempotent");
  }
  return "monotonicity, mitigation, scaling, saturation, P5 x100, greedy laws";
}

// --- criterion 9: byte-level determinism modulo timing
std::string determinism() {
  GenSpec spec;
  spec.alpha = 7;
  spec.beta = 5;
  spec.gamma = 3;
  spec.mode = Mode::kQuadratic;
  require(emit_json(generate(spec)) == emit_json(generate(spec)),
          "gen not byte-identical");

  Instance inst = generate(spec);
  auto first = solve_bnb(inst, {FixLikelihood{2, 4}});
  auto second = solve_bnb(inst, {FixLikelihood{2, 4}});
  require(first.status == second.status &&
              first.solution->assignment == second.solution->assignment &&
              first.stats.nodes == second.stats.nodes,
          "solve not reproducible");

  BenchConfig cfg;
  cfg.alpha_set = {3, 5};
  cfg.beta_set = {2};
  cfg.versions = 3;
  cfg.strategies = {Strategy::kFastpath, Strategy::kBnb, Strategy::kOracle};
  auto run1 = run_suite(cfg);
  cfg.parallel_workers = 3;
  auto run2 = run_suite(cfg);
  require(strip_timing_columns(run1.results_csv) ==
              strip_timing_columns(run2.results_csv),
          "bench rows differ beyond timing columns");
  require(strip_timing_columns(run1.summary_csv) ==
              strip_timing_columns(run2.summary_csv),
          "bench summary differs beyond timing columns");
  return "gen bytes, solve outcome/nodes, bench CSVs stable across runs";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence, unconstrained", oracle_equivalence_unconstrained},
      {2, "oracle equivalence, side-constrained", oracle_equivalence_constrained},
      {3, "analytic collapse at 50x50", analytic_collapse},
      {4, "protocol reproduction at desk scale", protocol_reproduction},
      {5, "constrained search at 100x100", bnb_scaling},
      {6, "quality-ratio semantics", quality_metric},
      {7, "codec laws", codec_laws},
      {8, "invariant suite", invariant_suite},
      {9, "determinism", determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string verdict, detail;
    try {
      detail = criterion.run();
      verdict = "PASS";
    } catch (const std::exception& e) {
      detail = e.what();
      verdict = "FAIL";
      ++failures;
    }
    std::printf("[%s] criterion %d (%s): %s\n", verdict.c_str(), criterion.id,
                criterion.name.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  if (failures) {
    std::printf("%d of %zu acceptance criteria failed\n", failures,
                criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
