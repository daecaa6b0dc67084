#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mkp {

// Dimension mismatches and out-of-range indices.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by compute_efficiencies when some item has a zero weighted-resource
// denominator under the supplied weights.
class DegenerateWeightsError : public std::domain_error {
 public:
  DegenerateWeightsError(std::size_t item, const std::string& what)
      : std::domain_error(what), item_(item) {}
  std::size_t item() const noexcept { return item_; }

 private:
  std::size_t item_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  // The message without the position prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace mkp
