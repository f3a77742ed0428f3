#include "frugal/lp.hpp"

#include <algorithm>
#include <cmath>

#include "frugal/error.hpp"

namespace frugal {
namespace {

constexpr std::size_t kPivotCap = 100000;

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excluding the right-hand side
  std::vector<std::vector<double>> t;  // rows + 1 objective row, cols + 1 entries
  std::vector<std::size_t> basis;
  std::vector<char> blocked;  // columns that may not enter
  std::size_t pivots = 0;

  double& rhs(std::size_t i) { return t[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    if (++pivots > kPivotCap) {
      throw NumericalError("simplex exceeded " + std::to_string(kPivotCap) + " pivots");
    }
    const double p = t[r][c];
    for (double& v : t[r]) v /= p;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == r) continue;
      const double f = t[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
      t[i][c] = 0.0;
    }
    basis[r] = c;
  }

  // Maximizes the objective encoded in the last row (entries are -reduced
  // profit). Returns false when unbounded.
  bool optimize() {
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!blocked[j] && t[rows][j] < -kLpTolerance) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      double best = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] <= kLpTolerance) continue;
        const double ratio = t[i][cols] / t[i][enter];
        if (leave == rows || ratio < best - kLpTolerance ||
            (ratio <= best + kLpTolerance && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }

  void set_objective(const std::vector<double>& profit) {
    auto& z = t[rows];
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < profit.size(); ++j) z[j] = -profit[j];
    for (std::size_t i = 0; i < rows; ++i) {
      const double f = z[basis[i]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[i][j];
    }
  }

  void drop_row(std::size_t r) {
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    --rows;
  }
};

void check_shapes(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  if (n > kLpMaxVariables) throw SizeError("LP has more than 500 variables");
  if (lp.le_rows.size() + lp.eq_rows.size() > kLpMaxRows) {
    throw SizeError("LP has more than 2000 rows");
  }
  if (lp.le_rows.size() != lp.le_rhs.size() || lp.eq_rows.size() != lp.eq_rhs.size()) {
    throw ValidationError("LP row and right-hand-side counts differ");
  }
  if (!lp.lower.empty() && lp.lower.size() != n) {
    throw ValidationError("LP lower-bound vector has the wrong length");
  }
  auto finite_row = [&](const std::vector<double>& row) {
    if (row.size() != n) throw ValidationError("LP row has the wrong length");
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("LP coefficient is not finite");
    }
  };
  finite_row(lp.objective);
  for (const auto& row : lp.le_rows) finite_row(row);
  for (const auto& row : lp.eq_rows) finite_row(row);
}

}  // namespace

void LinearProgram::add_le(std::vector<double> row, double rhs) {
  le_rows.push_back(std::move(row));
  le_rhs.push_back(rhs);
}

void LinearProgram::add_eq(std::vector<double> row, double rhs) {
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

LpResult solve_lp(const LinearProgram& lp) {
  check_shapes(lp);
  const std::size_t n = lp.num_variables();
  const std::vector<double> lower = lp.lower.empty() ? std::vector<double>(n, 0.0) : lp.lower;

  // Shift x = y + lower and bring every row to a non-negative right-hand side.
  struct Row {
    std::vector<double> a;
    double rhs;
    int slack;  // +1 slack, -1 surplus, 0 none
  };
  std::vector<Row> rows;
  auto shifted = [&](const std::vector<double>& a, double rhs) {
    for (std::size_t j = 0; j < n; ++j) rhs -= a[j] * lower[j];
    return rhs;
  };
  for (std::size_t i = 0; i < lp.le_rows.size(); ++i) {
    const double rhs = shifted(lp.le_rows[i], lp.le_rhs[i]);
    if (rhs >= 0.0) {
      rows.push_back({lp.le_rows[i], rhs, +1});
    } else {
      std::vector<double> neg = lp.le_rows[i];
      for (double& v : neg) v = -v;
      rows.push_back({std::move(neg), -rhs, -1});
    }
  }
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    double rhs = shifted(lp.eq_rows[i], lp.eq_rhs[i]);
    std::vector<double> a = lp.eq_rows[i];
    if (rhs < 0.0) {
      for (double& v : a) v = -v;
      rhs = -rhs;
    }
    rows.push_back({std::move(a), rhs, 0});
  }

  const std::size_t m = rows.size();
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const auto& r : rows) {
    if (r.slack != 0) ++num_slack;
    if (r.slack != +1) ++num_art;
  }
  Tableau tab;
  tab.rows = m;
  tab.cols = n + num_slack + num_art;
  tab.t.assign(m + 1, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.assign(m, 0);
  tab.blocked.assign(tab.cols, 0);
  std::size_t next_slack = n;
  std::size_t next_art = n + num_slack;
  const std::size_t first_art = next_art;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = rows[i].a[j];
    tab.rhs(i) = rows[i].rhs;
    if (rows[i].slack != 0) {
      tab.t[i][next_slack] = rows[i].slack;
      if (rows[i].slack == +1) tab.basis[i] = next_slack;
      ++next_slack;
    }
    if (rows[i].slack != +1) {
      tab.t[i][next_art] = 1.0;
      tab.basis[i] = next_art++;
    }
  }

  double scale = 1.0;
  for (const auto& r : rows) scale = std::max(scale, std::abs(r.rhs));

  LpResult result;
  if (num_art > 0) {
    std::vector<double> phase1(tab.cols, 0.0);
    for (std::size_t j = first_art; j < tab.cols; ++j) phase1[j] = -1.0;
    tab.set_objective(phase1);
    tab.optimize();
    // The objective cell holds the phase-one value, minus the artificial sum.
    if (tab.t[m][tab.cols] < -kLpTolerance * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Pivot artificial variables out of the basis; rows where that is
    // impossible are redundant.
    for (std::size_t i = 0; i < tab.rows;) {
      if (tab.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t col = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (std::abs(tab.t[i][j]) > kLpTolerance) {
          col = j;
          break;
        }
      }
      if (col == first_art) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = first_art; j < tab.cols; ++j) tab.blocked[j] = 1;
  }

  std::vector<double> profit(tab.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) profit[j] = lp.objective[j];
  tab.set_objective(profit);
  if (!tab.optimize()) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.solution = lower;
  for (std::size_t i = 0; i < tab.rows; ++i) {
    if (tab.basis[i] < n) result.solution[tab.basis[i]] += tab.rhs(i);
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += lp.objective[j] * result.solution[j];
  return result;
}

double lp_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
  };
  for (std::size_t i = 0; i < lp.le_rows.size(); ++i) {
    worst = std::max(worst, dot(lp.le_rows[i]) - lp.le_rhs[i]);
  }
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    worst = std::max(worst, std::abs(dot(lp.eq_rows[i]) - lp.eq_rhs[i]));
  }
  for (std::size_t j = 0; j < lp.lower.size(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
  }
  if (lp.lower.empty()) {
    for (double v : x) worst = std::max(worst, -v);
  }
  return worst;
}

}  // namespace frugal
