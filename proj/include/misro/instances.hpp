#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "misro/core.hpp"

namespace misro {

// Shipped default seed for generation and benchmarking; MISRO_SEED and
// --seed override it in the CLI.
constexpr std::uint64_t kDefaultSeed = 42;

// Deterministic instance generation. The splitmix64 stream is seeded by
// folding (seed, alpha, beta, gamma, mode) with SplitMix64::combine, then
// consumed one draw per matrix entry in row-major order, followed by one
// draw per threshold. Identical specs give bit-identical instances on every
// platform. The instance is named inst_<alpha>_<beta>_<gamma>.
//
// Thresholds default to [20, 90]: the lower bound guarantees feasibility in
// all three modes (linear needs every threshold >= 17), the upper bound
// keeps them below the trivial ceiling.
Instance generate(const GenSpec& spec);

// MiniZinc data-file (DZN) interop.
//
// emit_dzn produces, one declaration per line, LF-terminated:
//   mode = <1|2|3>;
//   m = <int>;
//   n = <int>;
//   max_l = 6;
//   max_s = 6;
//   C = [<ints>];
//   M = [| r0c0, r0c1, ... | r1c0, ... |];
// Rows of M are requirements, columns are risks. The declaration names can
// be remapped for foreign models via DznNames.
struct DznNames {
  std::string mode = "mode";
  std::string m = "m";
  std::string n = "n";
  std::string max_l = "max_l";
  std::string max_s = "max_s";
  std::string thresholds = "C";
  std::string weights = "M";
};

std::string emit_dzn(const Instance& inst, const DznNames& names = {});

// Parses the emit_dzn dialect: whitespace-tolerant, declarations in any
// order, %-to-end-of-line comments, rows separated by `|` or `;`. Unknown
// declarations are skipped. Errors: kParse (syntax, with line/column),
// kSchema (missing/duplicate declaration, dimension mismatch), kRange
// (out-of-range entry). The result passes validate_instance; lambda is
// recomputed. Name and provenance are not representable in DZN.
Instance parse_dzn(std::string_view text, const DznNames& names = {});

// Native JSON format:
//   {name, mode, m, n, M: [[int]], C: [int],
//    gen?: {alpha, beta, gamma, seed, m_range: [lo,hi], c_range: [lo,hi]}}
// Lossless for all instance fields; round-trips are identity. Unknown fields
// are ignored; a warning per unknown field is appended to *warnings when
// given. Errors: kParse (malformed JSON), kSchema (missing/mistyped field),
// kRange / kStructure per validate_instance.
std::string emit_json(const Instance& inst);
Instance parse_json(std::string_view text,
                    std::vector<std::string>* warnings = nullptr);

// Assignment files used by the CLI: {"l": [ints], "s": [ints]}.
std::string emit_assignment_json(const Assignment& a);
Assignment parse_assignment_json(std::string_view text, Mode mode);

// File helpers (kIo on failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace misro
