#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misro/error.hpp"

namespace misro {

// Risk quantification shape. Levels live on the integer scale [1,6]
// (1 ultra residual .. 6 extremely severe); the encoded quantification of a
// risk is l+s, l*s or l*s^2 depending on the mode, and represents the real
// value quant/q_den(mode) in [0,1]. Keeping everything on a fixed integer
// denominator makes every acceptability comparison exact.
enum class Mode {
  kLinear = 1,     // arithmetic mean of likelihood and severity
  kBilinear = 2,   // product
  kQuadratic = 3,  // product with squared severity
};

constexpr int kMinLevel = 1;
constexpr int kMaxLevel = 6;
constexpr int kWeightMax = 10;      // matrix entries live in [0, 10]
constexpr int kThresholdMax = 99;   // thresholds live in [0, 99]
constexpr int kThresholdDen = 100;  // threshold i encodes c(t_i) = C_i / 100

// Fixed-point denominator per mode: 12, 36 or 216. Also the largest
// attainable quantification (reached at l = s = 6).
int q_den(Mode mode);

// Smallest attainable quantification: 2 for linear, 1 otherwise.
int q_min(Mode mode);

const char* mode_name(Mode mode);  // "linear" / "bilinear" / "quadratic"
int mode_to_int(Mode mode);        // 1 / 2 / 3
Mode mode_from_int(int value);     // inverse; kRange error otherwise

// Integer quantification of one risk. kDomain error on a level outside [1,6].
int quantify(Mode mode, int likelihood, int severity);

struct LevelPair {
  int l = kMinLevel;
  int s = kMinLevel;
  auto operator<=>(const LevelPair&) const = default;
};

// All 36 (l,s) pairs in lexicographic order.
std::vector<LevelPair> full_level_pairs();

// Distinct attainable quantification values over a set of allowed (l,s)
// pairs, ascending. Each value keeps one witness pair: the lexicographically
// smallest allowed pair producing it.
struct AchievableSet {
  std::vector<int> values;
  std::vector<LevelPair> witnesses;

  bool empty() const { return values.empty(); }
  std::size_t size() const { return values.size(); }
  int min_value() const { return values.front(); }
  int max_value() const { return values.back(); }

  bool contains(int value) const;
  // Largest value <= bound / smallest value >= bound, if any.
  std::optional<int> largest_not_above(std::int64_t bound) const;
  std::optional<int> smallest_not_below(std::int64_t bound) const;
  std::optional<LevelPair> witness_for(int value) const;
};

// kDomain error when allowed_pairs is empty or contains an out-of-range pair.
AchievableSet achievable_values(Mode mode,
                                const std::vector<LevelPair>& allowed_pairs);

// Labels of a system under assessment: lifecycle phases, ethical
// requirements, risks. Purely descriptive; the numeric model below works on
// indices.
struct MisDefinition {
  std::vector<std::string> phases;
  std::vector<std::string> requirement_names;
  std::vector<std::string> risk_names;
};

// kStructure error when a list is empty or contains duplicate labels.
void validate_definition(const MisDefinition& def);

// Parameters of the deterministic benchmark generator (see instances.hpp).
// Carried on generated instances so the native JSON format can round-trip
// provenance.
struct GenSpec {
  int alpha = 1;  // risk count (n)
  int beta = 1;   // requirement count (m)
  int gamma = 1;  // version index, 1-based
  Mode mode = Mode::kBilinear;
  std::uint64_t seed = 42;
  int m_lo = 0, m_hi = 10;   // matrix entry range
  int c_lo = 20, c_hi = 90;  // threshold range
  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

// One problem at one lifecycle phase. `weights` is the m x n risk/requirement
// similarity matrix (rows = requirements, columns = risks), `thresholds` the
// per-requirement reference criticalities on denominator 100, `lambda` the
// derived row sums used for normalization.
struct Instance {
  std::string name;
  Mode mode = Mode::kBilinear;
  int m = 0;
  int n = 0;
  std::vector<std::vector<int>> weights;
  std::vector<int> thresholds;
  std::vector<std::int64_t> lambda;
  std::optional<GenSpec> gen;

  // Mathematical content equality: everything except name and provenance.
  bool same_problem(const Instance& other) const;
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Builds a consistent Instance (lambda filled in) or throws: kStructure for
// shape problems, kRange for out-of-range entries.
Instance make_instance(Mode mode, std::vector<std::vector<int>> weights,
                       std::vector<int> thresholds, std::string name = "",
                       std::optional<GenSpec> gen = std::nullopt);

// Every violated invariant as one line; empty means valid. Never throws.
std::vector<std::string> validate_instance(const Instance& inst);

// Per-risk likelihood/severity levels plus the induced quantifications.
struct Assignment {
  std::vector<int> likelihood;
  std::vector<int> severity;
  std::vector<int> quant;

  int size() const { return static_cast<int>(likelihood.size()); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// kDomain error on a level outside [1,6]; kStructure on length mismatch.
Assignment make_assignment(Mode mode, std::vector<int> likelihood,
                           std::vector<int> severity);

// Exact calculated criticality of one requirement:
//   numerator / denominator = (sum_j M[i][j] * Q[j]) / (lambda_i * q_den).
// A requirement with lambda_i = 0 has no related risks: its criticality is
// undefined (denominator 0, no division performed) and it is vacuously
// acceptable.
struct RequirementCriticality {
  std::int64_t numerator = 0;
  std::int64_t denominator = 0;
  bool acceptable = true;

  bool defined() const { return denominator != 0; }
  // numerator/denominator in lowest terms; {0, 0} when undefined.
  std::pair<std::int64_t, std::int64_t> reduced() const;
};

struct CriticalityReport {
  std::vector<RequirementCriticality> requirements;
  bool overall_acceptable = true;
};

// Acceptability of requirement i is the integer cross-multiplied test
//   100 * sum_j M[i][j]*Q[j]  <=  C_i * q_den(mode) * lambda_i
// so no division or rounding ever happens on the decision path.
CriticalityReport calc_criticality(const Instance& inst, const Assignment& a);

// Same report computed from a raw quantification vector (no levels needed).
CriticalityReport criticality_for_quants(const Instance& inst,
                                         const std::vector<int>& quants);

bool is_acceptable(const Instance& inst, const Assignment& a);

// Lowers likelihood and/or severity of one risk. The deltas must change
// something (a no-op is not a mitigation) and may not push a level below 1:
// a risk can be reduced, never eliminated.
struct MitigationAction {
  int risk = 0;
  int delta_l = 0;
  int delta_s = 0;
};

// Returns the mitigated assignment; the affected risk's quantification
// strictly decreases. kDomain errors: "no-op mitigation" when both deltas are
// zero, "risk elimination" when a level would drop below 1.
Assignment apply_mitigation(const Assignment& a, const MitigationAction& act,
                            Mode mode);

}  // namespace misro
