#include "misro/oracle.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

namespace misro {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Pair filtering done locally, straight from the constraint list.
bool pair_allowed(const SideConstraint& c, int l, int s, Mode mode) {
  struct Visitor {
    int l, s, q;
    bool operator()(const FixLikelihood& v) const { return l == v.level; }
    bool operator()(const FixSeverity& v) const { return s == v.level; }
    bool operator()(const RestrictLikelihood& v) const {
      return std::find(v.levels.begin(), v.levels.end(), l) != v.levels.end();
    }
    bool operator()(const RestrictSeverity& v) const {
      return std::find(v.levels.begin(), v.levels.end(), s) != v.levels.end();
    }
    bool operator()(const MinQuant& v) const { return q >= v.bound; }
    bool operator()(const MaxQuant& v) const { return q <= v.bound; }
  };
  return std::visit(Visitor{l, s, quantify(mode, l, s)}, c);
}

}  // namespace

SolveOutcome brute_force(const Instance& inst,
                         const std::vector<SideConstraint>& side,
                         std::int64_t cap) {
  const auto start = std::chrono::steady_clock::now();
  validate_side_constraints(inst, side);

  const auto n = static_cast<std::size_t>(inst.n);
  const auto m = static_cast<std::size_t>(inst.m);

  // Per-risk candidate pairs in (l, s) order.
  std::vector<std::vector<LevelPair>> pairs(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int l = kMinLevel; l <= kMaxLevel; ++l) {
      for (int s = kMinLevel; s <= kMaxLevel; ++s) {
        bool ok = true;
        for (const SideConstraint& c : side) {
          if (static_cast<std::size_t>(constraint_risk(c)) != j) continue;
          if (!pair_allowed(c, l, s, inst.mode)) {
            ok = false;
            break;
          }
        }
        if (ok) pairs[j].push_back({l, s});
      }
    }
  }

  BigInt space = 1;
  for (const auto& p : pairs) space *= static_cast<std::int64_t>(p.size());
  if (space > cap) {
    fail(ErrorKind::kCapacity,
         "instance too large for oracle: " + space.str() + " assignments, cap " +
             std::to_string(cap));
  }

  std::vector<std::vector<int>> pair_quants(n);
  for (std::size_t j = 0; j < n; ++j) {
    pair_quants[j].reserve(pairs[j].size());
    for (const LevelPair& p : pairs[j]) {
      pair_quants[j].push_back(quantify(inst.mode, p.l, p.s));
    }
  }

  // lambda and acceptability re-derived from scratch.
  std::vector<BigInt> lambda(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) lambda[i] += inst.weights[i][j];
  }
  const int den = q_den(inst.mode);
  auto acceptable = [&](const std::vector<int>& quants) {
    for (std::size_t i = 0; i < m; ++i) {
      if (lambda[i] == 0) continue;  // no related risks, nothing to violate
      BigInt weighted = 0;
      for (std::size_t j = 0; j < n; ++j) {
        weighted += BigInt(inst.weights[i][j]) * quants[j];
      }
      // sum M[i][j]*q(r_j) / (lambda_i * den) <= C_i / 100, cross-multiplied
      if (weighted * kThresholdDen > BigInt(inst.thresholds[i]) * den * lambda[i]) {
        return false;
      }
    }
    return true;
  };

  SolveOutcome out;
  std::vector<std::size_t> index(n, 0);
  std::vector<int> quants(n);
  std::optional<Solution> best;

  bool exhausted = std::any_of(pairs.begin(), pairs.end(),
                               [](const auto& p) { return p.empty(); });
  while (!exhausted) {
    ++out.stats.nodes;
    for (std::size_t j = 0; j < n; ++j) {
      quants[j] = pair_quants[j][index[j]];
    }
    const int objective = *std::min_element(quants.begin(), quants.end());
    // Strict improvement keeps the first (lexicographically smallest)
    // optimal assignment found by the fixed enumeration order.
    if ((!best || objective > best->objective) && acceptable(quants)) {
      Solution sol;
      std::vector<int> l(n), s(n);
      for (std::size_t j = 0; j < n; ++j) {
        l[j] = pairs[j][index[j]].l;
        s[j] = pairs[j][index[j]].s;
      }
      sol.assignment = make_assignment(inst.mode, std::move(l), std::move(s));
      sol.objective = objective;
      sol.proven_optimal = true;
      best = std::move(sol);
    }
    // Advance the odometer, last risk fastest.
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++index[j] < pairs[j].size()) break;
      index[j] = 0;
      if (j == 0) exhausted = true;
    }
  }

  if (best) {
    out.status = SolveStatus::kOptimal;
    out.bound = best->objective;
    out.solution = std::move(best);
  } else {
    out.status = SolveStatus::kInfeasible;
    out.bound = -1;
  }
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace misro
