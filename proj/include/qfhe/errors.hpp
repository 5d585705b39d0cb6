#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfhe {

// Operands whose dimensions or qubit counts do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotUnitaryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised instead of running an exhaustive loop that is too large to be useful.
class SizeGuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operator is outside the set a scheme (or key variant) can evaluate.
class OperatorNotPermitted : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or invariant-breaking input document. `line` is 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& field, const std::string& message, std::size_t line = 0)
      : std::runtime_error(format(field, message, line)), field_(field), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& message,
                            std::size_t line) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::size_t line_;
};

}  // namespace qfhe
