#include "misro/side.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace misro {

namespace {

using json = nlohmann::ordered_json;

void check_risk(const Instance& inst, int risk) {
  if (risk < 0 || risk >= inst.n) {
    fail(ErrorKind::kDomain, "side constraint risk index " +
                                 std::to_string(risk) + " outside [0," +
                                 std::to_string(inst.n) + ")");
  }
}

void check_level_value(int level) {
  if (level < kMinLevel || level > kMaxLevel) {
    fail(ErrorKind::kDomain,
         "side constraint level " + std::to_string(level) + " outside [1,6]");
  }
}

void check_levels(const std::vector<int>& levels) {
  if (levels.empty()) {
    fail(ErrorKind::kDomain, "side constraint level set is empty");
  }
  for (int level : levels) check_level_value(level);
}

void check_quant_bound(const Instance& inst, int bound) {
  if (bound < q_min(inst.mode) || bound > q_den(inst.mode)) {
    fail(ErrorKind::kDomain,
         "quantification bound " + std::to_string(bound) + " outside [" +
             std::to_string(q_min(inst.mode)) + "," +
             std::to_string(q_den(inst.mode)) + "] for mode " +
             mode_name(inst.mode));
  }
}

}  // namespace

int constraint_risk(const SideConstraint& c) {
  return std::visit([](const auto& v) { return v.risk; }, c);
}

void validate_side_constraints(const Instance& inst,
                               const std::vector<SideConstraint>& side) {
  for (const SideConstraint& c : side) {
    check_risk(inst, constraint_risk(c));
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, FixLikelihood> ||
                        std::is_same_v<T, FixSeverity>) {
            check_level_value(v.level);
          } else if constexpr (std::is_same_v<T, RestrictLikelihood> ||
                               std::is_same_v<T, RestrictSeverity>) {
            check_levels(v.levels);
          } else {
            check_quant_bound(inst, v.bound);
          }
        },
        c);
  }
}

std::vector<SideConstraint> parse_side_constraints_json(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    fail(ErrorKind::kParse, "malformed JSON side-constraint document");
  }
  if (!doc.is_array()) {
    fail(ErrorKind::kSchema, "side constraints must be a JSON list");
  }
  auto get_int = [](const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_number_integer()) {
      fail(ErrorKind::kSchema,
           std::string("side constraint needs integer field '") + field + "'");
    }
    return it->get<int>();
  };
  auto get_levels = [](const json& obj) {
    auto it = obj.find("levels");
    if (it == obj.end() || !it->is_array()) {
      fail(ErrorKind::kSchema,
           "side constraint needs integer list field 'levels'");
    }
    std::vector<int> levels;
    for (const auto& v : *it) {
      if (!v.is_number_integer()) {
        fail(ErrorKind::kSchema, "'levels' entries must be integers");
      }
      levels.push_back(v.get<int>());
    }
    return levels;
  };

  std::vector<SideConstraint> side;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("type") ||
        !entry["type"].is_string()) {
      fail(ErrorKind::kSchema,
           "each side constraint must be an object with a 'type' tag");
    }
    std::string type = entry["type"].get<std::string>();
    int risk = get_int(entry, "risk");
    if (type == "fix_likelihood") {
      side.push_back(FixLikelihood{risk, get_int(entry, "level")});
    } else if (type == "fix_severity") {
      side.push_back(FixSeverity{risk, get_int(entry, "level")});
    } else if (type == "restrict_likelihood") {
      side.push_back(RestrictLikelihood{risk, get_levels(entry)});
    } else if (type == "restrict_severity") {
      side.push_back(RestrictSeverity{risk, get_levels(entry)});
    } else if (type == "min_quant") {
      side.push_back(MinQuant{risk, get_int(entry, "value")});
    } else if (type == "max_quant") {
      side.push_back(MaxQuant{risk, get_int(entry, "value")});
    } else {
      fail(ErrorKind::kSchema, "unknown side constraint type '" + type + "'");
    }
  }
  return side;
}

std::string emit_side_constraints_json(
    const std::vector<SideConstraint>& side) {
  json doc = json::array();
  for (const SideConstraint& c : side) {
    json entry;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, FixLikelihood>) {
            entry = {{"type", "fix_likelihood"},
                     {"risk", v.risk},
                     {"level", v.level}};
          } else if constexpr (std::is_same_v<T, FixSeverity>) {
            entry = {{"type", "fix_severity"},
                     {"risk", v.risk},
                     {"level", v.level}};
          } else if constexpr (std::is_same_v<T, RestrictLikelihood>) {
            entry = {{"type", "restrict_likelihood"},
                     {"risk", v.risk},
                     {"levels", v.levels}};
          } else if constexpr (std::is_same_v<T, RestrictSeverity>) {
            entry = {{"type", "restrict_severity"},
                     {"risk", v.risk},
                     {"levels", v.levels}};
          } else if constexpr (std::is_same_v<T, MinQuant>) {
            entry = {{"type", "min_quant"},
                     {"risk", v.risk},
                     {"value", v.bound}};
          } else {
            entry = {{"type", "max_quant"},
                     {"risk", v.risk},
                     {"value", v.bound}};
          }
        },
        c);
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string describe(const SideConstraint& c) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixLikelihood>) {
          out << "fix_likelihood(risk " << v.risk << ", level " << v.level
              << ")";
        } else if constexpr (std::is_same_v<T, FixSeverity>) {
          out << "fix_severity(risk " << v.risk << ", level " << v.level
              << ")";
        } else if constexpr (std::is_same_v<T, RestrictLikelihood> ||
                             std::is_same_v<T, RestrictSeverity>) {
          out << (std::is_same_v<T, RestrictLikelihood>
                      ? "restrict_likelihood"
                      : "restrict_severity")
              << "(risk " << v.risk << ", levels {";
          for (std::size_t i = 0; i < v.levels.size(); ++i) {
            out << (i ? "," : "") << v.levels[i];
          }
          out << "})";
        } else if constexpr (std::is_same_v<T, MinQuant>) {
          out << "min_quant(risk " << v.risk << ", value " << v.bound << ")";
        } else {
          out << "max_quant(risk " << v.risk << ", value " << v.bound << ")";
        }
      },
      c);
  return out.str();
}

}  // namespace misro
