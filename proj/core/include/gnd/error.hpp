#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gnd {

// Text-format parse failure with a 1-based source line number.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// A postcondition another component relies on did not hold.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace gnd
