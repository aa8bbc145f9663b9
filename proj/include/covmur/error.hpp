#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covmur {

enum class ErrorKind {
  InvalidOperator,  // non-Hermitian / malformed matrix
  InvalidSymmetry,  // non-unitary map, broken group or action axioms
  Structural,       // dimension or outcome-set mismatch
  Domain,           // argument outside the documented domain
  Infeasible,       // e.g. Bloch vector outside the unit ball
  Range,            // requested target outside what is reachable
  Unsupported,      // no exact evaluator / precondition fails
  Parse,            // malformed input file
  Validation,       // well-formed input that fails a mathematical check
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace covmur
