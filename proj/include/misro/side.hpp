#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "misro/core.hpp"

namespace misro {

// Expert-imposed restrictions layered on top of the base problem. Fix* and
// Restrict* act on levels of one risk; MinQuant/MaxQuant bound its
// quantification on the mode's denominator.
struct FixLikelihood {
  int risk;
  int level;
};
struct FixSeverity {
  int risk;
  int level;
};
struct RestrictLikelihood {
  int risk;
  std::vector<int> levels;
};
struct RestrictSeverity {
  int risk;
  std::vector<int> levels;
};
struct MinQuant {
  int risk;
  int bound;
};
struct MaxQuant {
  int risk;
  int bound;
};

using SideConstraint = std::variant<FixLikelihood, FixSeverity,
                                    RestrictLikelihood, RestrictSeverity,
                                    MinQuant, MaxQuant>;

int constraint_risk(const SideConstraint& c);

// Precondition checks only: risk index in [0,n), levels in [1,6], nonempty
// level sets, quantification bounds in [q_min, q_den]. kDomain error on
// violation. Whether the constraints are jointly satisfiable is the solver's
// business, not a validity question.
void validate_side_constraints(const Instance& inst,
                               const std::vector<SideConstraint>& side);

// JSON side-constraint files: a list of tagged objects, e.g.
//   [{"type": "fix_severity", "risk": 1, "level": 2},
//    {"type": "restrict_likelihood", "risk": 0, "levels": [1, 2, 3]},
//    {"type": "min_quant", "risk": 2, "value": 12}]
std::vector<SideConstraint> parse_side_constraints_json(std::string_view text);
std::string emit_side_constraints_json(const std::vector<SideConstraint>& side);

// Human-readable one-liner, e.g. "fix_severity(risk 1, level 2)".
std::string describe(const SideConstraint& c);

}  // namespace misro
