#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace frugal {

inline constexpr std::size_t kLpMaxVariables = 500;
inline constexpr std::size_t kLpMaxRows = 2000;
inline constexpr double kLpTolerance = 1e-9;

// maximize c.x  subject to  A x <= b,  E x = f,  x >= lower.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> le_rows;
  std::vector<double> le_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<double> lower;  // empty means all zero

  std::size_t num_variables() const { return objective.size(); }
  void add_le(std::vector<double> row, double rhs);
  void add_eq(std::vector<double> row, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> solution;
  double objective = 0.0;
};

// Dense two-phase simplex with Bland's rule. Throws SizeError beyond the caps
// and NumericalError if the pivot limit is reached.
LpResult solve_lp(const LinearProgram& lp);

// Largest violation of any constraint by `x` (0 when feasible).
double lp_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace frugal
