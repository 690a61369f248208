#ifndef FRACLEI_ERRORS_HPP
#define FRACLEI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraclei {

// Raised when a fractional operation leaves the generalized-polynomial class
// (negative exponents, orders outside (0,1], gamma poles, negative bases).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Symmetry/shape violations of tensors and structures.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace fraclei

#endif  // FRACLEI_ERRORS_HPP
