#pragma once

#include <stdexcept>
#include <string>

namespace misro {

// Error taxonomy shared across the suite. The CLI maps kind() onto its
// one-line `error: <kind>: <detail>` output; tests match on kinds.
enum class ErrorKind {
  kDomain,       // value outside its documented domain
  kStructure,    // shape/dimension mismatch between components
  kParse,        // malformed input text (message carries line/column)
  kSchema,       // well-formed input with missing or misused declarations
  kRange,        // entry outside its permitted numeric range
  kUnsupported,  // operation refused for this input class
  kCapacity,     // instance exceeds a hard resource cap
  kIo,           // filesystem failure
  kInternal,     // invariant violated inside the suite itself (a bug)
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace misro
