#include "misro/instances.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "misro/rng.hpp"

namespace misro {

namespace {

using json = nlohmann::ordered_json;

void check_gen_spec(const GenSpec& spec) {
  if (spec.alpha < 1 || spec.beta < 1 || spec.gamma < 1) {
    fail(ErrorKind::kDomain, "alpha, beta and gamma must all be >= 1");
  }
  if (spec.m_lo < 0 || spec.m_hi > kWeightMax || spec.m_lo > spec.m_hi) {
    fail(ErrorKind::kRange, "matrix entry range must lie within [0,10]");
  }
  if (spec.c_lo < 0 || spec.c_hi > kThresholdMax || spec.c_lo > spec.c_hi) {
    fail(ErrorKind::kRange, "threshold range must lie within [0,99]");
  }
}

}  // namespace

Instance generate(const GenSpec& spec) {
  check_gen_spec(spec);
  std::uint64_t h = spec.seed;
  h = SplitMix64::combine(h, static_cast<std::uint64_t>(spec.alpha));
  h = SplitMix64::combine(h, static_cast<std::uint64_t>(spec.beta));
  h = SplitMix64::combine(h, static_cast<std::uint64_t>(spec.gamma));
  h = SplitMix64::combine(h, static_cast<std::uint64_t>(mode_to_int(spec.mode)));
  SplitMix64 rng(h);

  std::vector<std::vector<int>> weights(
      static_cast<std::size_t>(spec.beta),
      std::vector<int>(static_cast<std::size_t>(spec.alpha)));
  for (auto& row : weights) {
    for (int& cell : row) cell = rng.next_in(spec.m_lo, spec.m_hi);
  }
  std::vector<int> thresholds(static_cast<std::size_t>(spec.beta));
  for (int& c : thresholds) c = rng.next_in(spec.c_lo, spec.c_hi);

  std::string name = "inst_" + std::to_string(spec.alpha) + "_" +
                     std::to_string(spec.beta) + "_" +
                     std::to_string(spec.gamma);
  return make_instance(spec.mode, std::move(weights), std::move(thresholds),
                       std::move(name), spec);
}

// ---------------------------------------------------------------------------
// DZN
// ---------------------------------------------------------------------------

std::string emit_dzn(const Instance& inst, const DznNames& names) {
  std::ostringstream out;
  out << names.mode << " = " << mode_to_int(inst.mode) << ";\n";
  out << names.m << " = " << inst.m << ";\n";
  out << names.n << " = " << inst.n << ";\n";
  out << names.max_l << " = " << kMaxLevel << ";\n";
  out << names.max_s << " = " << kMaxLevel << ";\n";
  out << names.thresholds << " = [";
  for (int i = 0; i < inst.m; ++i) {
    if (i) out << ", ";
    out << inst.thresholds[static_cast<std::size_t>(i)];
  }
  out << "];\n";
  out << names.weights << " = [|";
  for (int i = 0; i < inst.m; ++i) {
    if (i) out << " |";
    for (int j = 0; j < inst.n; ++j) {
      out << (j ? ", " : " ")
          << inst.weights[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)];
    }
  }
  out << " |];\n";
  return out.str();
}

namespace {

// Minimal recursive-descent reader for the DZN dialect above. Tracks
// line/column for parse diagnostics.
class DznReader {
 public:
  explicit DznReader(std::string_view text) : text_(text) {}

  struct IntList {
    std::vector<std::int64_t> values;
  };
  struct Matrix {
    std::vector<std::vector<std::int64_t>> rows;
  };

  // One parsed declaration: exactly one of the alternatives is set.
  struct Decl {
    std::string ident;
    std::optional<std::int64_t> scalar;
    std::optional<IntList> list;
    std::optional<Matrix> matrix;
  };

  std::vector<Decl> read_all() {
    std::vector<Decl> decls;
    skip_blank();
    while (!eof()) {
      decls.push_back(read_decl());
      skip_blank();
    }
    return decls;
  }

 private:
  [[noreturn]] void err(const std::string& what) {
    fail(ErrorKind::kParse, "line " + std::to_string(line_) + ", col " +
                                std::to_string(col_) + ": " + what);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (peek() != c) {
      err(std::string("expected '") + c + "'");
    }
    advance();
  }

  std::string read_ident() {
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_') {
      err("expected identifier");
    }
    std::string ident;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_')) {
      ident.push_back(advance());
    }
    return ident;
  }

  std::int64_t read_int() {
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      err("expected integer");
    }
    std::int64_t value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (advance() - '0');
      if (value > 1'000'000'000'000LL) err("integer literal too large");
    }
    return negative ? -value : value;
  }

  std::vector<std::int64_t> read_int_list(char stop1, char stop2) {
    std::vector<std::int64_t> values;
    skip_blank();
    while (peek() != stop1 && peek() != stop2) {
      values.push_back(read_int());
      skip_blank();
      if (peek() == ',') {
        advance();
        skip_blank();
      } else if (peek() != stop1 && peek() != stop2) {
        err("expected ',' between integers");
      }
    }
    return values;
  }

  Decl read_decl() {
    Decl decl;
    decl.ident = read_ident();
    skip_blank();
    expect('=');
    skip_blank();
    if (peek() == '[') {
      advance();
      if (peek() == '|') {
        advance();
        decl.matrix = read_matrix_body();
      } else {
        IntList list;
        list.values = read_int_list(']', ']');
        expect(']');
        decl.list = std::move(list);
      }
    } else {
      decl.scalar = read_int();
    }
    skip_blank();
    expect(';');
    return decl;
  }

  // Positioned just after "[|"; rows separated by '|' or ';', closed by "|]".
  Matrix read_matrix_body() {
    Matrix matrix;
    while (true) {
      matrix.rows.push_back(read_int_list('|', ';'));
      skip_blank();
      if (peek() == ';') {
        advance();
        continue;
      }
      if (peek() != '|') err("expected '|' or ';' in matrix literal");
      advance();
      if (peek() == ']') {
        advance();
        return matrix;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::int64_t require_scalar(const DznReader::Decl& decl) {
  if (!decl.scalar) {
    fail(ErrorKind::kSchema,
         "declaration '" + decl.ident + "' must be a plain integer");
  }
  return *decl.scalar;
}

int checked_int(std::int64_t value, int lo, int hi, const std::string& what) {
  if (value < lo || value > hi) {
    fail(ErrorKind::kRange, what + " = " + std::to_string(value) +
                                " outside [" + std::to_string(lo) + "," +
                                std::to_string(hi) + "]");
  }
  return static_cast<int>(value);
}

}  // namespace

Instance parse_dzn(std::string_view text, const DznNames& names) {
  DznReader reader(text);
  auto decls = reader.read_all();

  std::map<std::string, const DznReader::Decl*> by_name;
  const std::vector<std::string> known = {names.mode,  names.m,
                                          names.n,     names.max_l,
                                          names.max_s, names.thresholds,
                                          names.weights};
  for (const auto& decl : decls) {
    if (std::find(known.begin(), known.end(), decl.ident) == known.end()) {
      continue;  // foreign declaration, skip
    }
    if (!by_name.emplace(decl.ident, &decl).second) {
      fail(ErrorKind::kSchema, "duplicate declaration '" + decl.ident + "'");
    }
  }
  auto lookup = [&](const std::string& ident) -> const DznReader::Decl& {
    auto it = by_name.find(ident);
    if (it == by_name.end()) {
      fail(ErrorKind::kSchema, "missing declaration '" + ident + "'");
    }
    return *it->second;
  };

  Mode mode = mode_from_int(
      checked_int(require_scalar(lookup(names.mode)), 1, 3, names.mode));
  int m = checked_int(require_scalar(lookup(names.m)), 1, 1'000'000, names.m);
  int n = checked_int(require_scalar(lookup(names.n)), 1, 1'000'000, names.n);
  // The model fixes six likelihood/severity degrees; anything else is outside
  // this artifact's domain.
  checked_int(require_scalar(lookup(names.max_l)), kMaxLevel, kMaxLevel,
              names.max_l);
  checked_int(require_scalar(lookup(names.max_s)), kMaxLevel, kMaxLevel,
              names.max_s);

  const auto& c_decl = lookup(names.thresholds);
  if (!c_decl.list) {
    fail(ErrorKind::kSchema,
         "declaration '" + names.thresholds + "' must be a 1-d array");
  }
  if (static_cast<int>(c_decl.list->values.size()) != m) {
    fail(ErrorKind::kSchema,
         names.thresholds + " has " +
             std::to_string(c_decl.list->values.size()) +
             " entries but m = " + std::to_string(m));
  }
  std::vector<int> thresholds;
  thresholds.reserve(c_decl.list->values.size());
  for (std::size_t i = 0; i < c_decl.list->values.size(); ++i) {
    thresholds.push_back(checked_int(c_decl.list->values[i], 0, kThresholdMax,
                                     names.thresholds + "[" +
                                         std::to_string(i) + "]"));
  }

  const auto& m_decl = lookup(names.weights);
  if (!m_decl.matrix) {
    fail(ErrorKind::kSchema,
         "declaration '" + names.weights + "' must be a 2-d array");
  }
  const auto& rows = m_decl.matrix->rows;
  if (static_cast<int>(rows.size()) != m) {
    fail(ErrorKind::kSchema, names.weights + " has " +
                                 std::to_string(rows.size()) +
                                 " rows but m = " + std::to_string(m));
  }
  std::vector<std::vector<int>> weights;
  weights.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      fail(ErrorKind::kSchema, names.weights + " row " + std::to_string(i) +
                                   " has " + std::to_string(rows[i].size()) +
                                   " entries but n = " + std::to_string(n));
    }
    std::vector<int> row;
    row.reserve(rows[i].size());
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      row.push_back(checked_int(rows[i][j], 0, kWeightMax,
                                names.weights + "[" + std::to_string(i) + "," +
                                    std::to_string(j) + "]"));
    }
    weights.push_back(std::move(row));
  }

  return make_instance(mode, std::move(weights), std::move(thresholds));
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string emit_json(const Instance& inst) {
  json doc;
  if (!inst.name.empty()) doc["name"] = inst.name;
  doc["mode"] = mode_to_int(inst.mode);
  doc["m"] = inst.m;
  doc["n"] = inst.n;
  doc["C"] = inst.thresholds;
  doc["M"] = inst.weights;
  if (inst.gen) {
    json gen;
    gen["alpha"] = inst.gen->alpha;
    gen["beta"] = inst.gen->beta;
    gen["gamma"] = inst.gen->gamma;
    gen["seed"] = inst.gen->seed;
    gen["m_range"] = {inst.gen->m_lo, inst.gen->m_hi};
    gen["c_range"] = {inst.gen->c_lo, inst.gen->c_hi};
    doc["gen"] = std::move(gen);
  }
  return doc.dump(2) + "\n";
}

namespace {

json parse_document(std::string_view text) {
  json doc = json::parse(text, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    fail(ErrorKind::kParse, "malformed JSON document");
  }
  return doc;
}

const json& require_field(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) {
    fail(ErrorKind::kSchema, std::string("missing field '") + field + "'");
  }
  return *it;
}

std::int64_t require_integer(const json& value, const std::string& what) {
  if (!value.is_number_integer()) {
    fail(ErrorKind::kSchema, "field '" + what + "' must be an integer");
  }
  return value.get<std::int64_t>();
}

std::pair<int, int> require_range(const json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 2) {
    fail(ErrorKind::kSchema, "field '" + what + "' must be [lo, hi]");
  }
  return {static_cast<int>(require_integer(value[0], what)),
          static_cast<int>(require_integer(value[1], what))};
}

}  // namespace

Instance parse_json(std::string_view text, std::vector<std::string>* warnings) {
  json doc = parse_document(text);
  if (!doc.is_object()) {
    fail(ErrorKind::kSchema, "top-level JSON value must be an object");
  }
  static const std::vector<std::string> known = {"name", "mode", "m",
                                                 "n",    "C",    "M",
                                                 "gen"};
  if (warnings) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
        warnings->push_back("ignoring unknown field '" + it.key() + "'");
      }
    }
  }

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) {
      fail(ErrorKind::kSchema, "field 'name' must be a string");
    }
    name = it->get<std::string>();
  }
  Mode mode = mode_from_int(
      static_cast<int>(require_integer(require_field(doc, "mode"), "mode")));
  std::int64_t m = require_integer(require_field(doc, "m"), "m");
  std::int64_t n = require_integer(require_field(doc, "n"), "n");

  const json& c_field = require_field(doc, "C");
  if (!c_field.is_array()) {
    fail(ErrorKind::kSchema, "field 'C' must be an array of integers");
  }
  std::vector<int> thresholds;
  thresholds.reserve(c_field.size());
  for (std::size_t i = 0; i < c_field.size(); ++i) {
    thresholds.push_back(checked_int(
        require_integer(c_field[i], "C"), 0, kThresholdMax,
        "C[" + std::to_string(i) + "]"));
  }

  const json& m_field = require_field(doc, "M");
  if (!m_field.is_array()) {
    fail(ErrorKind::kSchema, "field 'M' must be an array of rows");
  }
  std::vector<std::vector<int>> weights;
  weights.reserve(m_field.size());
  for (std::size_t i = 0; i < m_field.size(); ++i) {
    const json& row = m_field[i];
    if (!row.is_array()) {
      fail(ErrorKind::kSchema,
           "M row " + std::to_string(i) + " must be an array");
    }
    std::vector<int> cells;
    cells.reserve(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      cells.push_back(checked_int(
          require_integer(row[j], "M"), 0, kWeightMax,
          "M[" + std::to_string(i) + "," + std::to_string(j) + "]"));
    }
    weights.push_back(std::move(cells));
  }

  if (static_cast<std::int64_t>(weights.size()) != m ||
      (n >= 1 && !weights.empty() &&
       static_cast<std::int64_t>(weights.front().size()) != n)) {
    fail(ErrorKind::kSchema, "declared m/n do not match the shape of M");
  }
  if (static_cast<std::int64_t>(thresholds.size()) != m) {
    fail(ErrorKind::kSchema, "C has " + std::to_string(thresholds.size()) +
                                 " entries but m = " + std::to_string(m));
  }

  std::optional<GenSpec> gen;
  if (auto it = doc.find("gen"); it != doc.end()) {
    if (!it->is_object()) {
      fail(ErrorKind::kSchema, "field 'gen' must be an object");
    }
    GenSpec spec;
    spec.alpha = static_cast<int>(
        require_integer(require_field(*it, "alpha"), "gen.alpha"));
    spec.beta = static_cast<int>(
        require_integer(require_field(*it, "beta"), "gen.beta"));
    spec.gamma = static_cast<int>(
        require_integer(require_field(*it, "gamma"), "gen.gamma"));
    const json& seed = require_field(*it, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      fail(ErrorKind::kSchema, "field 'gen.seed' must be an integer");
    }
    spec.seed = seed.get<std::uint64_t>();
    spec.mode = mode;
    std::tie(spec.m_lo, spec.m_hi) =
        require_range(require_field(*it, "m_range"), "gen.m_range");
    std::tie(spec.c_lo, spec.c_hi) =
        require_range(require_field(*it, "c_range"), "gen.c_range");
    gen = spec;
  }

  return make_instance(mode, std::move(weights), std::move(thresholds),
                       std::move(name), std::move(gen));
}

std::string emit_assignment_json(const Assignment& a) {
  json doc;
  doc["l"] = a.likelihood;
  doc["s"] = a.severity;
  return doc.dump(2) + "\n";
}

Assignment parse_assignment_json(std::string_view text, Mode mode) {
  json doc = parse_document(text);
  if (!doc.is_object()) {
    fail(ErrorKind::kSchema, "assignment document must be an object");
  }
  auto levels = [&](const char* field) {
    const json& arr = require_field(doc, field);
    if (!arr.is_array()) {
      fail(ErrorKind::kSchema,
           std::string("field '") + field + "' must be an array");
    }
    std::vector<int> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
      out.push_back(static_cast<int>(require_integer(v, field)));
    }
    return out;
  };
  return make_assignment(mode, levels("l"), levels("s"));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(ErrorKind::kIo, "failed writing '" + path + "'");
}

}  // namespace misro
