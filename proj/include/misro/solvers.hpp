#pragma once

#include <chrono>
#include <optional>

#include "misro/core.hpp"
#include "misro/side.hpp"

namespace misro {

enum class SolveStatus {
  kOptimal,
  kFeasibleNotProven,
  kInfeasible,
  kDeadlineWithIncumbent,
  kDeadlineNoIncumbent,
};

const char* to_string(SolveStatus status);
bool is_deadline(SolveStatus status);

struct Solution {
  Assignment assignment;
  int objective = 0;  // min_j Q[j]
  bool proven_optimal = false;
};

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t propagations = 0;
  double wall_seconds = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Solution> solution;
  // Best proven upper bound on the objective; equals the objective when
  // optimal, -1 when infeasible (meaningless).
  int bound = -1;
  SearchStats stats;
};

using Seconds = std::chrono::duration<double>;

// Per-risk search domain after side constraints: the attainable
// quantification values (with level witnesses) of the allowed (l,s) pairs,
// clipped by quantification bounds. An empty set marks an over-constrained
// risk. kDomain error on invalid constraints (see validate_side_constraints).
std::vector<AchievableSet> compile_risk_domains(
    const Instance& inst, const std::vector<SideConstraint>& side);

// Closed-form exact solve of the unconstrained problem.
//
// With a nonnegative matrix and a max-min objective, the uniform assignment
// Q_j = t dominates: row i with lambda_i > 0 constrains any assignment with
// min Q = t through lambda_i*t <= sum_j M[i][j]*Q[j] <= C_i*lambda_i*q_den/100,
// so t* = max { v attainable : 100*v <= q_den * min_{lambda_i>0} C_i } and the
// witness pair replicated across all risks attains it. O(m*n + |V| log |V|).
//
// Refuses side constraints with kUnsupported; returns Infeasible when no
// attainable value fits (all-zero matrices are vacuously feasible at q_den).
SolveOutcome solve_fastpath(const Instance& inst,
                            const std::vector<SideConstraint>& side = {});

// Exact search over per-risk quantification domains supporting arbitrary
// side constraints and a cooperative deadline.
//
// Objective by descending threshold: candidate values t are drawn from the
// union of per-risk domains in decreasing order; at each t every risk is
// held to its smallest allowed value >= t and a depth-first dive with
// bounds-consistency propagation on the cross-multiplied row inequalities
// decides feasibility. Feasibility is monotone in t (matrix entries are
// nonnegative), so the first feasible threshold is provably optimal, and
// every failed threshold tightens the proven bound. Variables are assigned
// in input order, values in descending order. Deterministic given
// (inst, side); the deadline is checked at every node.
SolveOutcome solve_bnb(const Instance& inst,
                       const std::vector<SideConstraint>& side = {},
                       std::optional<Seconds> deadline = std::nullopt);

// Deterministic saturation post-pass mirroring the greatest-value search
// order: for j = 0..n-1 raise Q[j] to the largest attainable value that
// keeps every row inequality satisfied, other risks fixed. The result is
// acceptable, componentwise >= the base assignment, and has the same
// objective. kDomain error when the base is not acceptable.
Assignment greedy_saturate(const Instance& inst, const Solution& base);

// Same pass restricted to explicit per-risk domains (used to saturate under
// side constraints; domains[j] must contain base.quant[j]).
Assignment greedy_saturate_with_domains(
    const Instance& inst, const Solution& base,
    const std::vector<AchievableSet>& domains);

}  // namespace misro
