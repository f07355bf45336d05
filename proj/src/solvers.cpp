#include "misro/solvers.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace misro {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleNotProven: return "feasible_not_proven";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kDeadlineWithIncumbent: return "deadline_incumbent";
    case SolveStatus::kDeadlineNoIncumbent: return "deadline_no_incumbent";
  }
  return "?";
}

bool is_deadline(SolveStatus status) {
  return status == SolveStatus::kDeadlineWithIncumbent ||
         status == SolveStatus::kDeadlineNoIncumbent;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

AchievableSet filter_by_bounds(const AchievableSet& set, int lo, int hi) {
  AchievableSet out;
  for (std::size_t k = 0; k < set.values.size(); ++k) {
    if (set.values[k] >= lo && set.values[k] <= hi) {
      out.values.push_back(set.values[k]);
      out.witnesses.push_back(set.witnesses[k]);
    }
  }
  return out;
}

// Builds the assignment realizing `vals` through each domain's witness pair.
Assignment materialize(Mode mode, const std::vector<int>& vals,
                       const std::vector<AchievableSet>& domains) {
  std::vector<int> likelihood, severity;
  likelihood.reserve(vals.size());
  severity.reserve(vals.size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    auto w = domains[j].witness_for(vals[j]);
    if (!w) {
      fail(ErrorKind::kInternal,
           "no witness for quantification " + std::to_string(vals[j]));
    }
    likelihood.push_back(w->l);
    severity.push_back(w->s);
  }
  return make_assignment(mode, std::move(likelihood), std::move(severity));
}

std::vector<std::int64_t> row_budgets(const Instance& inst) {
  // Cross-multiplied acceptability: 100 * sum_j M[i][j]*Q[j] <= budget_i.
  const std::int64_t den = q_den(inst.mode);
  std::vector<std::int64_t> budgets(static_cast<std::size_t>(inst.m));
  for (int i = 0; i < inst.m; ++i) {
    budgets[static_cast<std::size_t>(i)] =
        static_cast<std::int64_t>(inst.thresholds[static_cast<std::size_t>(i)]) *
        den * inst.lambda[static_cast<std::size_t>(i)];
  }
  return budgets;
}

}  // namespace

std::vector<AchievableSet> compile_risk_domains(
    const Instance& inst, const std::vector<SideConstraint>& side) {
  validate_side_constraints(inst, side);

  using PairMask = std::array<std::array<bool, kMaxLevel + 1>, kMaxLevel + 1>;
  PairMask all_allowed;
  for (auto& row : all_allowed) row.fill(true);
  std::vector<PairMask> allowed(static_cast<std::size_t>(inst.n), all_allowed);
  std::vector<int> q_lo(static_cast<std::size_t>(inst.n), q_min(inst.mode));
  std::vector<int> q_hi(static_cast<std::size_t>(inst.n), q_den(inst.mode));

  for (const SideConstraint& c : side) {
    auto j = static_cast<std::size_t>(constraint_risk(c));
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, FixLikelihood>) {
            for (int l = kMinLevel; l <= kMaxLevel; ++l) {
              if (l == v.level) continue;
              for (int s = kMinLevel; s <= kMaxLevel; ++s) {
                allowed[j][static_cast<std::size_t>(l)]
                       [static_cast<std::size_t>(s)] = false;
              }
            }
          } else if constexpr (std::is_same_v<T, FixSeverity>) {
            for (int s = kMinLevel; s <= kMaxLevel; ++s) {
              if (s == v.level) continue;
              for (int l = kMinLevel; l <= kMaxLevel; ++l) {
                allowed[j][static_cast<std::size_t>(l)]
                       [static_cast<std::size_t>(s)] = false;
              }
            }
          } else if constexpr (std::is_same_v<T, RestrictLikelihood>) {
            for (int l = kMinLevel; l <= kMaxLevel; ++l) {
              if (std::find(v.levels.begin(), v.levels.end(), l) !=
                  v.levels.end()) {
                continue;
              }
              for (int s = kMinLevel; s <= kMaxLevel; ++s) {
                allowed[j][static_cast<std::size_t>(l)]
                       [static_cast<std::size_t>(s)] = false;
              }
            }
          } else if constexpr (std::is_same_v<T, RestrictSeverity>) {
            for (int s = kMinLevel; s <= kMaxLevel; ++s) {
              if (std::find(v.levels.begin(), v.levels.end(), s) !=
                  v.levels.end()) {
                continue;
              }
              for (int l = kMinLevel; l <= kMaxLevel; ++l) {
                allowed[j][static_cast<std::size_t>(l)]
                       [static_cast<std::size_t>(s)] = false;
              }
            }
          } else if constexpr (std::is_same_v<T, MinQuant>) {
            q_lo[j] = std::max(q_lo[j], v.bound);
          } else {
            q_hi[j] = std::min(q_hi[j], v.bound);
          }
        },
        c);
  }

  std::vector<AchievableSet> domains;
  domains.reserve(static_cast<std::size_t>(inst.n));
  for (int j = 0; j < inst.n; ++j) {
    auto js = static_cast<std::size_t>(j);
    std::vector<LevelPair> pairs;
    for (int l = kMinLevel; l <= kMaxLevel; ++l) {
      for (int s = kMinLevel; s <= kMaxLevel; ++s) {
        if (allowed[js][static_cast<std::size_t>(l)]
                   [static_cast<std::size_t>(s)]) {
          pairs.push_back({l, s});
        }
      }
    }
    if (pairs.empty()) {
      domains.push_back({});
      continue;
    }
    domains.push_back(filter_by_bounds(achievable_values(inst.mode, pairs),
                                       q_lo[js], q_hi[js]));
  }
  return domains;
}

SolveOutcome solve_fastpath(const Instance& inst,
                            const std::vector<SideConstraint>& side) {
  if (!side.empty()) {
    fail(ErrorKind::kUnsupported,
         "unsupported constraints: the fast path cannot honor side "
         "constraints, use the branch-and-bound strategy");
  }
  const auto start = Clock::now();
  SolveOutcome out;

  const AchievableSet all = achievable_values(inst.mode, full_level_pairs());
  std::optional<int> min_threshold;
  for (int i = 0; i < inst.m; ++i) {
    if (inst.lambda[static_cast<std::size_t>(i)] > 0) {
      int c = inst.thresholds[static_cast<std::size_t>(i)];
      if (!min_threshold || c < *min_threshold) min_threshold = c;
    }
  }

  std::optional<int> target;
  if (!min_threshold) {
    target = q_den(inst.mode);  // every requirement is vacuous
  } else {
    // 100*v <= q_den * minC  <=>  v <= floor(q_den * minC / 100)
    target = all.largest_not_above(
        static_cast<std::int64_t>(q_den(inst.mode)) * *min_threshold /
        kThresholdDen);
  }
  if (!target) {
    out.status = SolveStatus::kInfeasible;
    out.bound = -1;
    out.stats.wall_seconds = seconds_since(start);
    return out;
  }

  LevelPair w = *all.witness_for(*target);
  std::vector<int> likelihood(static_cast<std::size_t>(inst.n), w.l);
  std::vector<int> severity(static_cast<std::size_t>(inst.n), w.s);
  Solution sol;
  sol.assignment = make_assignment(inst.mode, std::move(likelihood),
                                   std::move(severity));
  sol.objective = *target;
  sol.proven_optimal = true;
  out.status = SolveStatus::kOptimal;
  out.solution = std::move(sol);
  out.bound = *target;
  out.stats.wall_seconds = seconds_since(start);
  return out;
}

SolveOutcome solve_bnb(const Instance& inst,
                       const std::vector<SideConstraint>& side,
                       std::optional<Seconds> deadline) {
  const auto start = Clock::now();
  std::optional<Clock::time_point> cutoff;
  if (deadline) {
    cutoff = start + std::chrono::duration_cast<Clock::duration>(*deadline);
  }
  auto expired = [&cutoff] { return cutoff && Clock::now() >= *cutoff; };

  SolveOutcome out;
  auto finish = [&out, start](SolveStatus status) -> SolveOutcome& {
    out.status = status;
    out.stats.wall_seconds = seconds_since(start);
    return out;
  };

  const auto domains = compile_risk_domains(inst, side);
  for (const AchievableSet& dom : domains) {
    if (dom.empty()) {
      out.bound = -1;
      return finish(SolveStatus::kInfeasible);  // over-constrained risk
    }
  }

  const auto budgets = row_budgets(inst);
  const auto n = static_cast<std::size_t>(inst.n);
  const auto m = static_cast<std::size_t>(inst.m);

  // The componentwise-minimal assignment minimizes every row sum (the matrix
  // is nonnegative), so it settles feasibility outright and seeds the
  // incumbent.
  ++out.stats.nodes;
  std::vector<int> base_vals(n);
  for (std::size_t j = 0; j < n; ++j) base_vals[j] = domains[j].min_value();
  {
    bool ok = true;
    for (std::size_t i = 0; i < m; ++i) {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        sum += static_cast<std::int64_t>(inst.weights[i][j]) * base_vals[j];
      }
      ++out.stats.propagations;
      if (kThresholdDen * sum > budgets[i]) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      out.bound = -1;
      return finish(SolveStatus::kInfeasible);
    }
  }
  Solution incumbent;
  incumbent.assignment = materialize(inst.mode, base_vals, domains);
  incumbent.objective = *std::min_element(base_vals.begin(), base_vals.end());
  incumbent.proven_optimal = false;
  out.solution = incumbent;

  // Candidate thresholds: the union of per-risk domain values, bounded above
  // by the weakest risk's maximum (the objective cannot exceed it) and below
  // by the incumbent objective (already feasible).
  int cap = domains.front().max_value();
  for (const AchievableSet& dom : domains) {
    cap = std::min(cap, dom.max_value());
  }
  std::set<int> union_values;
  for (const AchievableSet& dom : domains) {
    for (int v : dom.values) {
      if (v >= incumbent.objective && v <= cap) union_values.insert(v);
    }
  }
  std::vector<int> candidates(union_values.rbegin(), union_values.rend());
  out.bound = cap;

  std::vector<int> lower(n);
  std::vector<std::int64_t> min_sum(m);
  for (int t : candidates) {
    out.bound = t;  // every larger candidate is disproven by now
    if (expired()) return finish(SolveStatus::kDeadlineWithIncumbent);
    ++out.stats.nodes;

    // Hold every risk at its smallest allowed value >= t and check the rows;
    // by monotonicity this decides feasibility of the whole threshold.
    for (std::size_t j = 0; j < n; ++j) {
      lower[j] = *domains[j].smallest_not_below(t);
    }
    bool feasible = true;
    for (std::size_t i = 0; i < m; ++i) {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        sum += static_cast<std::int64_t>(inst.weights[i][j]) * lower[j];
      }
      min_sum[i] = sum;
      ++out.stats.propagations;
      if (kThresholdDen * sum > budgets[i]) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;

    // Feasible threshold: dive in input order, assigning each risk the
    // largest value its rows can still absorb (bounds-consistent upper
    // bound), mirroring the greatest-value search annotation. The dive
    // cannot fail: every partial choice keeps all row minima within budget.
    std::vector<int> vals = lower;
    for (std::size_t j = 0; j < n; ++j) {
      if (expired()) return finish(SolveStatus::kDeadlineWithIncumbent);
      ++out.stats.nodes;
      std::int64_t ub = domains[j].max_value();
      for (std::size_t i = 0; i < m; ++i) {
        const std::int64_t w = inst.weights[i][j];
        if (w == 0) continue;
        ++out.stats.propagations;
        const std::int64_t room =
            budgets[i] - kThresholdDen * (min_sum[i] - w * lower[j]);
        ub = std::min(ub, room / (kThresholdDen * w));
      }
      auto v = domains[j].largest_not_above(ub);
      if (!v || *v < lower[j]) {
        fail(ErrorKind::kInternal, "threshold dive lost feasibility");
      }
      if (*v != lower[j]) {
        for (std::size_t i = 0; i < m; ++i) {
          min_sum[i] += static_cast<std::int64_t>(inst.weights[i][j]) *
                        (*v - lower[j]);
        }
        lower[j] = *v;
      }
      vals[j] = *v;
    }

    const int objective = *std::min_element(vals.begin(), vals.end());
    if (objective != t) {
      fail(ErrorKind::kInternal,
           "descending threshold invariant violated: objective " +
               std::to_string(objective) + " at threshold " +
               std::to_string(t));
    }
    Solution sol;
    sol.assignment = materialize(inst.mode, vals, domains);
    sol.objective = objective;
    sol.proven_optimal = true;
    out.solution = std::move(sol);
    out.bound = objective;
    return finish(SolveStatus::kOptimal);
  }

  fail(ErrorKind::kInternal,
       "threshold iteration exhausted without reaching the incumbent");
}

Assignment greedy_saturate_with_domains(
    const Instance& inst, const Solution& base,
    const std::vector<AchievableSet>& domains) {
  const auto& a = base.assignment;
  if (a.size() != inst.n || static_cast<int>(domains.size()) != inst.n) {
    fail(ErrorKind::kStructure,
         "saturation base/domains do not match the instance");
  }
  if (!is_acceptable(inst, a)) {
    fail(ErrorKind::kDomain, "saturation base assignment is not acceptable");
  }
  const auto n = static_cast<std::size_t>(inst.n);
  const auto m = static_cast<std::size_t>(inst.m);
  for (std::size_t j = 0; j < n; ++j) {
    if (!domains[j].contains(a.quant[j])) {
      fail(ErrorKind::kDomain, "base quantification of risk " +
                                   std::to_string(j) +
                                   " is outside its domain");
    }
  }

  const auto budgets = row_budgets(inst);
  std::vector<std::int64_t> sums(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sums[i] += static_cast<std::int64_t>(inst.weights[i][j]) * a.quant[j];
    }
  }

  Assignment result = a;
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t ub = domains[j].max_value();
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t w = inst.weights[i][j];
      if (w == 0) continue;
      const std::int64_t room =
          budgets[i] - kThresholdDen * (sums[i] - w * result.quant[j]);
      ub = std::min(ub, room / (kThresholdDen * w));
    }
    const int v = *domains[j].largest_not_above(ub);  // >= current value
    if (v != result.quant[j]) {
      for (std::size_t i = 0; i < m; ++i) {
        sums[i] += static_cast<std::int64_t>(inst.weights[i][j]) *
                   (v - result.quant[j]);
      }
      const LevelPair w_pair = *domains[j].witness_for(v);
      result.likelihood[j] = w_pair.l;
      result.severity[j] = w_pair.s;
      result.quant[j] = v;
    }
  }
  return result;
}

Assignment greedy_saturate(const Instance& inst, const Solution& base) {
  std::vector<AchievableSet> domains(
      static_cast<std::size_t>(inst.n),
      achievable_values(inst.mode, full_level_pairs()));
  return greedy_saturate_with_domains(inst, base, domains);
}

}  // namespace misro
