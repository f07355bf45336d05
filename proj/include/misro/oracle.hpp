#pragma once

#include <cstdint>

#include "misro/solvers.hpp"

namespace misro {

// Full domains allow n <= 5 risks: 36^5 = 60,466,176 assignments.
constexpr std::int64_t kDefaultOracleCap = 100'000'000;

// Exhaustive ground truth for small instances. Enumerates every (l,s)
// assignment over the side-constraint-filtered pair sets in fixed order
// (risk by risk, likelihood before severity), keeps the best min-quant
// value, and returns the lexicographically smallest optimal assignment.
//
// Deliberately independent of the solver machinery: acceptability is
// re-derived from the matrix with arbitrary-width integers rather than
// through the cross-multiplied helpers, so a shared arithmetic bug cannot
// hide. Only core types (and the side-constraint type) are shared.
//
// kCapacity error when the assignment count would exceed `cap`.
SolveOutcome brute_force(const Instance& inst,
                         const std::vector<SideConstraint>& side = {},
                         std::int64_t cap = kDefaultOracleCap);

}  // namespace misro
