// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hayes {

// Error taxonomy. Kind maps onto the CLI exit codes: config/grammar problems
// exit 2, violated mathematical preconditions exit 3, failed identity checks
// exit 4. Everything derives from Error so callers can catch one type.
enum class ErrKind { parse = 2, precondition = 3, identity = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  ErrKind kind;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(ErrKind::parse,
              "parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line, col;
};

class MathError : public Error {
 public:
  explicit MathError(const std::string& msg) : Error(ErrKind::precondition, msg) {}
};

class IdentityError : public Error {
 public:
  explicit IdentityError(const std::string& msg) : Error(ErrKind::identity, msg) {}
};

// Thrown when a declared tower step turns out reducible; carries a witness
// factor of the offending minimal polynomial so the caller can report it.
class ReducibleStep : public MathError {
 public:
  ReducibleStep(const std::string& step, const std::string& factor_text)
      : MathError("tower step '" + step + "' is reducible; found factor " + factor_text),
        step(step), factor(factor_text) {}
  std::string step, factor;
};

inline MathError division_by_zero() { return MathError("division by zero"); }
inline MathError mixed_fields() { return MathError("operands belong to different fields"); }
inline MathError inexact_division(const std::string& where) {
  return MathError("division is not exact in " + where);
}

}  // namespace hayes
