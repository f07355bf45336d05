#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "misro/instances.hpp"
#include "misro/oracle.hpp"
#include "misro/rng.hpp"
#include "misro/solvers.hpp"
#include "test_util.hpp"

using namespace misro;
using testutil::random_constraint;
using testutil::random_instance;

namespace {

Instance example_a() {
  return make_instance(Mode::kBilinear, {{10, 0, 5}, {2, 2, 2}}, {50, 75});
}

}  // namespace

TEST_CASE("fast path solves example A") {
  auto outcome = solve_fastpath(example_a());
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  REQUIRE(outcome.solution.has_value());
  CHECK(outcome.solution->objective == 18);
  CHECK(outcome.bound == 18);
  CHECK(outcome.solution->proven_optimal);
  // D5 witness for 18 is (3,6), replicated.
  CHECK(outcome.solution->assignment.likelihood == std::vector<int>{3, 3, 3});
  CHECK(outcome.solution->assignment.severity == std::vector<int>{6, 6, 6});
  CHECK(is_acceptable(example_a(), outcome.solution->assignment));
}

TEST_CASE("fast path detects infeasibility") {
  Instance inst = make_instance(Mode::kLinear, {{5}}, {10});
  auto outcome = solve_fastpath(inst);
  CHECK(outcome.status == SolveStatus::kInfeasible);
  CHECK(!outcome.solution.has_value());
}

TEST_CASE("fast path saturates vacuous instances") {
  for (Mode mode : {Mode::kLinear, Mode::kBilinear, Mode::kQuadratic}) {
    Instance inst = make_instance(mode, {{0, 0}, {0, 0}}, {0, 0});
    auto outcome = solve_fastpath(inst);
    REQUIRE(outcome.status == SolveStatus::kOptimal);
    CHECK(outcome.solution->objective == q_den(mode));
  }
}

TEST_CASE("fast path refuses side constraints") {
  CHECK_THROWS_WITH_AS(solve_fastpath(example_a(), {FixSeverity{0, 2}}),
                       doctest::Contains("unsupported constraints"), Error);
}

TEST_CASE("branch and bound matches example A, unconstrained") {
  auto outcome = solve_bnb(example_a());
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  CHECK(outcome.solution->objective == 18);
  CHECK(is_acceptable(example_a(), outcome.solution->assignment));
}

TEST_CASE("branch and bound honors a fixed severity") {
  // Fixing severity of risk 1 to 2 caps its values at {2,4,6,8,10,12}.
  auto outcome = solve_bnb(example_a(), {FixSeverity{1, 2}});
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  CHECK(outcome.solution->objective == 12);
  const auto& a = outcome.solution->assignment;
  CHECK(a.severity[1] == 2);
  CHECK(is_acceptable(example_a(), a));
  for (int q : a.quant) CHECK(q >= 12);
}

TEST_CASE("side constraint domains") {
  Instance inst = example_a();
  auto domains = compile_risk_domains(inst, {FixSeverity{1, 2}});
  CHECK(domains[1].values == std::vector<int>{2, 4, 6, 8, 10, 12});
  CHECK(domains[0].size() == 18);

  // Intersection can empty a domain: severity fixed to 1 cannot reach 30.
  domains = compile_risk_domains(inst, {FixSeverity{0, 1}, MinQuant{0, 30}});
  CHECK(domains[0].empty());

  CHECK_THROWS_AS(
      compile_risk_domains(inst, {MinQuant{0, q_den(inst.mode) + 1}}), Error);
  CHECK_THROWS_AS(compile_risk_domains(inst, {FixSeverity{7, 2}}), Error);
  CHECK_THROWS_AS(compile_risk_domains(inst, {FixSeverity{0, 0}}), Error);
  CHECK_THROWS_AS(
      compile_risk_domains(inst, {RestrictLikelihood{0, {}}}), Error);
}

TEST_CASE("zero-weight columns saturate while tight columns stay bounded") {
  // Risk 1 carries no weight anywhere; risk 0 is held down by the row.
  Instance inst = make_instance(Mode::kBilinear, {{10, 0}}, {25});
  auto outcome = solve_bnb(inst);
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  // 100*v <= 25*36*10/10 = 900 per unit weight: v <= 9 -> achievable 9.
  CHECK(outcome.solution->objective == 9);
  CHECK(outcome.solution->assignment.quant[0] == 9);
  CHECK(outcome.solution->assignment.quant[1] == 36);
  CHECK(brute_force(inst).solution->objective == 9);

  // A zero threshold with positive lambda admits nothing.
  Instance zero_c = make_instance(Mode::kBilinear, {{10, 0}}, {0});
  CHECK(solve_bnb(zero_c).status == SolveStatus::kInfeasible);
  CHECK(brute_force(zero_c).status == SolveStatus::kInfeasible);
}

TEST_CASE("inconsistent side constraints give Infeasible, not an error") {
  auto outcome =
      solve_bnb(example_a(), {FixSeverity{0, 1}, MinQuant{0, 30}});
  CHECK(outcome.status == SolveStatus::kInfeasible);
}

TEST_CASE("bnb respects quantification bounds") {
  Instance inst = example_a();
  auto outcome = solve_bnb(inst, {MaxQuant{2, 6}});
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  CHECK(outcome.solution->objective == 6);
  CHECK(outcome.solution->assignment.quant[2] <= 6);

  outcome = solve_bnb(inst, {MinQuant{1, 30}});
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  CHECK(outcome.solution->assignment.quant[1] >= 30);
  CHECK(outcome.solution->objective == 18);
}

TEST_CASE("deadline expiry returns the incumbent") {
  GenSpec spec;
  spec.alpha = 200;
  spec.beta = 100;
  spec.mode = Mode::kQuadratic;
  Instance inst = generate(spec);
  auto outcome = solve_bnb(inst, {}, Seconds(0.0));
  CHECK(outcome.status == SolveStatus::kDeadlineWithIncumbent);
  REQUIRE(outcome.solution.has_value());
  CHECK(!outcome.solution->proven_optimal);
  CHECK(is_acceptable(inst, outcome.solution->assignment));
  CHECK(outcome.solution->objective <= outcome.bound);
}

TEST_CASE("P1: fast path and bnb agree on random unconstrained instances") {
  SplitMix64 rng(2024);
  for (int round = 0; round < 60; ++round) {
    Instance inst = random_instance(rng, 8, 8, 10, 99);
    auto fast = solve_fastpath(inst);
    auto bnb = solve_bnb(inst);
    REQUIRE(fast.status == bnb.status);
    if (fast.status == SolveStatus::kOptimal) {
      CHECK(fast.solution->objective == bnb.solution->objective);
      CHECK(is_acceptable(inst, fast.solution->assignment));
      CHECK(is_acceptable(inst, bnb.solution->assignment));
    }
  }
}

TEST_CASE("P2: bnb agrees with the oracle under side constraints") {
  SplitMix64 rng(77);
  int infeasible_seen = 0;
  for (int round = 0; round < 60; ++round) {
    Instance inst = random_instance(rng, 3, 4, 0, 99);
    std::vector<SideConstraint> side;
    const int k = 1 + static_cast<int>(rng.next() % 3);
    for (int c = 0; c < k; ++c) side.push_back(random_constraint(rng, inst));

    auto exact = solve_bnb(inst, side);
    auto truth = brute_force(inst, side);
    REQUIRE(exact.status == truth.status);
    if (truth.status == SolveStatus::kOptimal) {
      CHECK(exact.solution->objective == truth.solution->objective);
      CHECK(is_acceptable(inst, exact.solution->assignment));
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(infeasible_seen > 0);  // the sample must exercise both outcomes
}

TEST_CASE("P5: adding a side constraint never raises the optimum") {
  SplitMix64 rng(31337);
  for (int round = 0; round < 40; ++round) {
    Instance inst = random_instance(rng, 4, 4, 10, 99);
    std::vector<SideConstraint> side{random_constraint(rng, inst)};
    auto base = solve_bnb(inst);
    auto constrained = solve_bnb(inst, side);
    if (base.status == SolveStatus::kInfeasible) {
      CHECK(constrained.status == SolveStatus::kInfeasible);
    } else if (constrained.status == SolveStatus::kOptimal) {
      CHECK(constrained.solution->objective <= base.solution->objective);
    }
  }
}

TEST_CASE("P6: node counts are reproducible") {
  SplitMix64 rng(5);
  Instance inst = random_instance(rng, 6, 6, 10, 99);
  std::vector<SideConstraint> side{random_constraint(rng, inst)};
  auto first = solve_bnb(inst, side);
  auto second = solve_bnb(inst, side);
  CHECK(first.status == second.status);
  CHECK(first.stats.nodes == second.stats.nodes);
  CHECK(first.stats.propagations == second.stats.propagations);
  if (first.solution) {
    CHECK(first.solution->assignment == second.solution->assignment);
  }
}

TEST_CASE("greedy saturation on example A") {
  Instance inst = example_a();
  auto base = solve_fastpath(inst);
  REQUIRE(base.solution->objective == 18);
  Assignment saturated = greedy_saturate(inst, *base.solution);
  // Row 1 is tight (10*18 + 5*18 = 270), so risks 0 and 2 cannot move; risk 1
  // has no weight in row 1 and row 2 leaves room for the maximum.
  CHECK(saturated.quant == std::vector<int>{18, 36, 18});
  CHECK(is_acceptable(inst, saturated));

  // Idempotence.
  Solution again{saturated, 18, true};
  CHECK(greedy_saturate(inst, again) == saturated);
}

TEST_CASE("greedy saturation fills unconstraining rows to the top") {
  // Only zero-weight rows leave unlimited slack: any positive-lambda row
  // caps C_Q at 99/100 < 1, so full saturation needs vacuous requirements.
  Instance inst = make_instance(Mode::kBilinear, {{0, 0}}, {50});
  auto base = solve_fastpath(inst);
  Assignment saturated = greedy_saturate(inst, *base.solution);
  CHECK(saturated.quant == std::vector<int>{36, 36});

  // With weight on risk 0 the 99/100 ceiling binds it below q_den while the
  // unweighted risk still tops out.
  Instance weighted = make_instance(Mode::kBilinear, {{10, 0}}, {99});
  auto base2 = solve_fastpath(weighted);
  Assignment sat2 = greedy_saturate(weighted, *base2.solution);
  CHECK(sat2.quant[0] == 30);  // floor(99*36/100) = 35 -> largest product 30
  CHECK(sat2.quant[1] == 36);
}

TEST_CASE("P7: saturation dominates its base and keeps the objective") {
  SplitMix64 rng(99);
  for (int round = 0; round < 40; ++round) {
    Instance inst = random_instance(rng, 6, 6, 20, 99);
    auto base = solve_fastpath(inst);
    REQUIRE(base.status == SolveStatus::kOptimal);
    Assignment saturated = greedy_saturate(inst, *base.solution);
    CHECK(is_acceptable(inst, saturated));
    int min_q = q_den(inst.mode);
    for (int j = 0; j < inst.n; ++j) {
      CHECK(saturated.quant[j] >= base.solution->assignment.quant[j]);
      min_q = std::min(min_q, saturated.quant[j]);
    }
    CHECK(min_q == base.solution->objective);
  }
}

TEST_CASE("greedy saturation rejects an unacceptable base") {
  Instance inst = example_a();
  Solution bad;
  bad.assignment = make_assignment(inst.mode, {6, 6, 6}, {6, 6, 6});
  bad.objective = 36;
  CHECK_THROWS_AS(greedy_saturate(inst, bad), Error);
}
