#include "misro/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace misro {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

int q_den(Mode mode) {
  switch (mode) {
    case Mode::kLinear: return 12;
    case Mode::kBilinear: return 36;
    case Mode::kQuadratic: return 216;
  }
  fail(ErrorKind::kDomain, "invalid mode");
}

int q_min(Mode mode) { return mode == Mode::kLinear ? 2 : 1; }

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kLinear: return "linear";
    case Mode::kBilinear: return "bilinear";
    case Mode::kQuadratic: return "quadratic";
  }
  return "?";
}

int mode_to_int(Mode mode) { return static_cast<int>(mode); }

Mode mode_from_int(int value) {
  if (value < 1 || value > 3) {
    fail(ErrorKind::kRange,
         "mode must be 1 (linear), 2 (bilinear) or 3 (quadratic), got " +
             std::to_string(value));
  }
  return static_cast<Mode>(value);
}

namespace {

void check_level(const char* which, int level) {
  if (level < kMinLevel || level > kMaxLevel) {
    fail(ErrorKind::kDomain, std::string(which) + " level " +
                                 std::to_string(level) + " outside [1,6]");
  }
}

}  // namespace

int quantify(Mode mode, int likelihood, int severity) {
  check_level("likelihood", likelihood);
  check_level("severity", severity);
  switch (mode) {
    case Mode::kLinear: return likelihood + severity;
    case Mode::kBilinear: return likelihood * severity;
    case Mode::kQuadratic: return likelihood * severity * severity;
  }
  fail(ErrorKind::kDomain, "invalid mode");
}

std::vector<LevelPair> full_level_pairs() {
  std::vector<LevelPair> pairs;
  pairs.reserve(36);
  for (int l = kMinLevel; l <= kMaxLevel; ++l) {
    for (int s = kMinLevel; s <= kMaxLevel; ++s) {
      pairs.push_back({l, s});
    }
  }
  return pairs;
}

bool AchievableSet::contains(int value) const {
  return std::binary_search(values.begin(), values.end(), value);
}

std::optional<int> AchievableSet::largest_not_above(std::int64_t bound) const {
  auto it = std::upper_bound(values.begin(), values.end(), bound);
  if (it == values.begin()) return std::nullopt;
  return *std::prev(it);
}

std::optional<int> AchievableSet::smallest_not_below(std::int64_t bound) const {
  auto it = std::lower_bound(values.begin(), values.end(), bound);
  if (it == values.end()) return std::nullopt;
  return *it;
}

std::optional<LevelPair> AchievableSet::witness_for(int value) const {
  auto it = std::lower_bound(values.begin(), values.end(), value);
  if (it == values.end() || *it != value) return std::nullopt;
  return witnesses[static_cast<std::size_t>(it - values.begin())];
}

AchievableSet achievable_values(Mode mode,
                                const std::vector<LevelPair>& allowed_pairs) {
  if (allowed_pairs.empty()) {
    fail(ErrorKind::kDomain, "achievable_values: empty pair set");
  }
  // value -> lexicographically smallest witness
  std::map<int, LevelPair> by_value;
  for (const LevelPair& p : allowed_pairs) {
    int v = quantify(mode, p.l, p.s);
    auto [it, inserted] = by_value.emplace(v, p);
    if (!inserted && p < it->second) it->second = p;
  }
  AchievableSet out;
  out.values.reserve(by_value.size());
  out.witnesses.reserve(by_value.size());
  for (const auto& [v, w] : by_value) {
    out.values.push_back(v);
    out.witnesses.push_back(w);
  }
  return out;
}

void validate_definition(const MisDefinition& def) {
  auto check = [](const char* what, const std::vector<std::string>& labels) {
    if (labels.empty()) {
      fail(ErrorKind::kStructure, std::string(what) + " list is empty");
    }
    std::set<std::string> seen;
    for (const auto& label : labels) {
      if (!seen.insert(label).second) {
        fail(ErrorKind::kStructure,
             std::string("duplicate ") + what + " label '" + label + "'");
      }
    }
  };
  check("lifecycle phase", def.phases);
  check("requirement", def.requirement_names);
  check("risk", def.risk_names);
}

bool Instance::same_problem(const Instance& other) const {
  return mode == other.mode && m == other.m && n == other.n &&
         weights == other.weights && thresholds == other.thresholds;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  auto note = [&violations](std::string msg) {
    violations.push_back(std::move(msg));
  };

  if (inst.m < 1) note("m must be >= 1, got " + std::to_string(inst.m));
  if (inst.n < 1) note("n must be >= 1, got " + std::to_string(inst.n));
  if (static_cast<int>(inst.weights.size()) != inst.m) {
    note("matrix has " + std::to_string(inst.weights.size()) +
         " rows, declared m = " + std::to_string(inst.m));
  }
  for (std::size_t i = 0; i < inst.weights.size(); ++i) {
    const auto& row = inst.weights[i];
    if (static_cast<int>(row.size()) != inst.n) {
      note("matrix row " + std::to_string(i) + " has " +
           std::to_string(row.size()) +
           " columns, declared n = " + std::to_string(inst.n));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0 || row[j] > kWeightMax) {
        note("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
             ") = " + std::to_string(row[j]) + " outside [0,10]");
      }
    }
  }
  if (inst.thresholds.size() != inst.weights.size() ||
      static_cast<int>(inst.thresholds.size()) != inst.m) {
    note("threshold vector has " + std::to_string(inst.thresholds.size()) +
         " entries, declared m = " + std::to_string(inst.m));
  }
  for (std::size_t i = 0; i < inst.thresholds.size(); ++i) {
    if (inst.thresholds[i] < 0 || inst.thresholds[i] > kThresholdMax) {
      note("threshold " + std::to_string(i) + " = " +
           std::to_string(inst.thresholds[i]) + " outside [0,99]");
    }
  }
  if (inst.lambda.size() != inst.weights.size()) {
    note("lambda has " + std::to_string(inst.lambda.size()) +
         " entries for " + std::to_string(inst.weights.size()) +
         " matrix rows");
  } else {
    for (std::size_t i = 0; i < inst.weights.size(); ++i) {
      std::int64_t sum = std::accumulate(inst.weights[i].begin(),
                                         inst.weights[i].end(), std::int64_t{0});
      if (sum != inst.lambda[i]) {
        note("lambda[" + std::to_string(i) + "] = " +
             std::to_string(inst.lambda[i]) + " but row sum is " +
             std::to_string(sum));
      }
    }
  }
  return violations;
}

Instance make_instance(Mode mode, std::vector<std::vector<int>> weights,
                       std::vector<int> thresholds, std::string name,
                       std::optional<GenSpec> gen) {
  Instance inst;
  inst.name = std::move(name);
  inst.mode = mode;
  inst.m = static_cast<int>(weights.size());
  inst.n = weights.empty() ? 0 : static_cast<int>(weights.front().size());
  inst.weights = std::move(weights);
  inst.thresholds = std::move(thresholds);
  inst.gen = std::move(gen);
  inst.lambda.reserve(inst.weights.size());
  for (const auto& row : inst.weights) {
    inst.lambda.push_back(
        std::accumulate(row.begin(), row.end(), std::int64_t{0}));
  }
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid instance";
    for (const auto& v : violations) msg << "; " << v;
    bool shape_problem =
        std::any_of(violations.begin(), violations.end(), [](const auto& v) {
          return v.find("outside") == std::string::npos;
        });
    fail(shape_problem ? ErrorKind::kStructure : ErrorKind::kRange, msg.str());
  }
  return inst;
}

Assignment make_assignment(Mode mode, std::vector<int> likelihood,
                           std::vector<int> severity) {
  if (likelihood.size() != severity.size()) {
    fail(ErrorKind::kStructure,
         "likelihood has " + std::to_string(likelihood.size()) +
             " entries, severity has " + std::to_string(severity.size()));
  }
  Assignment a;
  a.likelihood = std::move(likelihood);
  a.severity = std::move(severity);
  a.quant.reserve(a.likelihood.size());
  for (std::size_t j = 0; j < a.likelihood.size(); ++j) {
    a.quant.push_back(quantify(mode, a.likelihood[j], a.severity[j]));
  }
  return a;
}

std::pair<std::int64_t, std::int64_t> RequirementCriticality::reduced() const {
  if (denominator == 0) return {0, 0};
  std::int64_t g = std::gcd(numerator, denominator);
  if (g == 0) return {0, 1};
  return {numerator / g, denominator / g};
}

CriticalityReport criticality_for_quants(const Instance& inst,
                                         const std::vector<int>& quants) {
  if (static_cast<int>(quants.size()) != inst.n) {
    fail(ErrorKind::kStructure,
         "quantification vector has " + std::to_string(quants.size()) +
             " entries for " + std::to_string(inst.n) + " risks");
  }
  const std::int64_t den_mode = q_den(inst.mode);
  CriticalityReport report;
  report.requirements.reserve(static_cast<std::size_t>(inst.m));
  for (int i = 0; i < inst.m; ++i) {
    RequirementCriticality rc;
    std::int64_t num = 0;
    for (int j = 0; j < inst.n; ++j) {
      num += static_cast<std::int64_t>(inst.weights[i][j]) * quants[j];
    }
    rc.numerator = num;
    if (inst.lambda[i] == 0) {
      rc.denominator = 0;  // undefined, vacuously acceptable
      rc.acceptable = true;
    } else {
      rc.denominator = inst.lambda[i] * den_mode;
      rc.acceptable = kThresholdDen * num <=
                      static_cast<std::int64_t>(inst.thresholds[i]) * den_mode *
                          inst.lambda[i];
    }
    report.overall_acceptable = report.overall_acceptable && rc.acceptable;
    report.requirements.push_back(rc);
  }
  return report;
}

CriticalityReport calc_criticality(const Instance& inst, const Assignment& a) {
  return criticality_for_quants(inst, a.quant);
}

bool is_acceptable(const Instance& inst, const Assignment& a) {
  return calc_criticality(inst, a).overall_acceptable;
}

Assignment apply_mitigation(const Assignment& a, const MitigationAction& act,
                            Mode mode) {
  if (act.risk < 0 || act.risk >= a.size()) {
    fail(ErrorKind::kDomain, "mitigation risk index " +
                                 std::to_string(act.risk) + " outside [0," +
                                 std::to_string(a.size()) + ")");
  }
  if (act.delta_l < 0 || act.delta_s < 0) {
    fail(ErrorKind::kDomain, "mitigation deltas must be non-negative");
  }
  if (act.delta_l == 0 && act.delta_s == 0) {
    fail(ErrorKind::kDomain, "no-op mitigation: both deltas are zero");
  }
  int new_l = a.likelihood[static_cast<std::size_t>(act.risk)] - act.delta_l;
  int new_s = a.severity[static_cast<std::size_t>(act.risk)] - act.delta_s;
  if (new_l < kMinLevel || new_s < kMinLevel) {
    fail(ErrorKind::kDomain,
         "risk elimination: mitigation would push a level of risk " +
             std::to_string(act.risk) + " below 1");
  }
  Assignment out = a;
  out.likelihood[static_cast<std::size_t>(act.risk)] = new_l;
  out.severity[static_cast<std::size_t>(act.risk)] = new_s;
  out.quant[static_cast<std::size_t>(act.risk)] = quantify(mode, new_l, new_s);
  return out;
}

}  // namespace misro
