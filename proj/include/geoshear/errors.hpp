#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoshear {

using Complex = std::complex<double>;

// Parse failure with byte offset into the source text and the token set
// that would have been accepted at that position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset,
             std::vector<std::string> expected = {})
      : std::runtime_error(format(message, offset, expected)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& message, std::size_t offset,
                            const std::vector<std::string>& expected);

  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Pole / branch-point hit during evaluation, reported with the location.
class EvalError : public std::runtime_error {
 public:
  EvalError(std::string message, Complex at)
      : std::runtime_error(message + " at z=(" + std::to_string(at.real()) +
                           "," + std::to_string(at.imag()) + ")"),
        at_(at) {}

  Complex at() const { return at_; }

 private:
  Complex at_;
};

// Precondition or parameter-range violation.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric failure: quadrature non-convergence, branch-tracking breakdown.
class NumericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace geoshear
