#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frugal {

// Base of every error raised by the library. `kind()` is a stable token used
// in machine-readable error records.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

#define FRUGAL_DEFINE_ERROR(Name, token)                            \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(what) {}         \
    const char* kind() const noexcept override { return token; }    \
  }

// Some agent belongs to every feasible set of the (restricted) system.
FRUGAL_DEFINE_ERROR(MonopolyError, "monopoly");
// Not enough edge-disjoint paths / groups for the requested flow size.
FRUGAL_DEFINE_ERROR(InfeasibleError, "infeasible");
FRUGAL_DEFINE_ERROR(ConvergenceError, "non-convergence");
FRUGAL_DEFINE_ERROR(StructureError, "structure");
FRUGAL_DEFINE_ERROR(CycleError, "cycle");
FRUGAL_DEFINE_ERROR(ValidationError, "validation");
FRUGAL_DEFINE_ERROR(SizeError, "size");
FRUGAL_DEFINE_ERROR(MonotonicityError, "monotonicity-violation");
FRUGAL_DEFINE_ERROR(NumericalError, "numerical-failure");
FRUGAL_DEFINE_ERROR(BenchmarkError, "benchmark");

#undef FRUGAL_DEFINE_ERROR

// An enumeration would exceed its configured cap.
class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  const char* kind() const noexcept override { return "cap-exceeded"; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  const char* kind() const noexcept override { return "syntax"; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace frugal
