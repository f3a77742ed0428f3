#include "frugal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frugal/error.hpp"

namespace frugal {
namespace {

constexpr double kInternalResidual = 1e-12;
constexpr std::size_t kStallWindow = 2000;

std::vector<double> multiply(const std::vector<std::vector<char>>& a,
                             const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (a[i][j]) sum += v[j];
    }
    out[i] = sum;
  }
  return out;
}

double rayleigh(const std::vector<double>& v, const std::vector<double>& av) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += v[i] * av[i];
    den += v[i] * v[i];
  }
  return num / den;
}

double residual_of(const std::vector<double>& v, const std::vector<double>& av,
                   double lambda) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    worst = std::max(worst, std::abs(av[i] - lambda * v[i]));
  }
  return worst;
}

}  // namespace

Eigenpair principal_eigen(const std::vector<std::vector<char>>& adjacency,
                          std::size_t max_iterations) {
  const std::size_t n = adjacency.size();
  if (n == 0) throw ValidationError("eigenproblem on an empty component");
  for (const auto& row : adjacency) {
    if (row.size() != n) throw ValidationError("adjacency matrix is not square");
  }
  if (n == 1) return Eigenpair{0.0, {1.0}, 0.0, 0};

  std::vector<double> v(n, 1.0);
  Eigenpair best{0.0, v, HUGE_VAL, 0};
  std::size_t last_improvement = 0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    std::vector<double> av = multiply(adjacency, v);
    const double lambda = rayleigh(v, av);
    const double res = residual_of(v, av, lambda);
    if (res < best.residual) {
      best = Eigenpair{lambda, v, res, it};
      last_improvement = it;
    }
    const double scale = std::max(1.0, lambda);
    if (res <= kInternalResidual * scale) break;
    // Rounding can stall the residual slightly above the internal target;
    // accept once it has stopped improving and meets the public contract.
    if (it - last_improvement > kStallWindow && best.residual <= kEigenResidual * scale) {
      break;
    }
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      av[i] += v[i];
      top = std::max(top, av[i]);
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / top;
  }
  if (best.residual > kEigenResidual * std::max(1.0, best.alpha)) {
    throw ConvergenceError("power iteration did not converge in " +
                           std::to_string(max_iterations) + " iterations (residual " +
                           std::to_string(best.residual) + ")");
  }
  for (double x : best.vector) {
    if (!(x > 0.0)) throw ConvergenceError("Perron vector has a non-positive entry");
  }
  return best;
}

SpectralLift lift(const DependencyGraph& h, std::size_t universe) {
  SpectralLift out;
  out.weights.assign(universe, 0.0);
  for (const auto& comp : h.components) {
    std::vector<std::size_t> idx;
    idx.reserve(comp.size());
    for (AgentId a : comp) idx.push_back(h.index_of(a));
    std::vector<std::vector<char>> sub(comp.size(), std::vector<char>(comp.size(), 0));
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (std::size_t j = 0; j < comp.size(); ++j) sub[i][j] = h.adjacency[idx[i]][idx[j]];
    }
    const Eigenpair pair = principal_eigen(sub);
    for (std::size_t i = 0; i < comp.size(); ++i) out.weights[comp[i]] = pair.vector[i];
    out.component_alphas.push_back(pair.alpha);
    out.alpha = std::max(out.alpha, pair.alpha);
    out.residual = std::max(out.residual, pair.residual / std::max(1.0, pair.alpha));
  }
  return out;
}

LozengeSolution solve_lozenge(std::span<const int> part_sizes, int r) {
  if (r < 1) throw ValidationError("r must be at least 1");
  if (part_sizes.size() < 2) throw ValidationError("need at least two parts");
  std::vector<std::size_t> part_of;
  for (std::size_t p = 0; p < part_sizes.size(); ++p) {
    if (part_sizes[p] < 1) throw ValidationError("part sizes must be positive");
    part_of.insert(part_of.end(), static_cast<std::size_t>(part_sizes[p]), p);
  }
  const std::size_t n = part_of.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = part_of[i] != part_of[j];
  }
  const Eigenpair pair = principal_eigen(adj);
  LozengeSolution out;
  out.alpha = pair.alpha;
  out.beta = pair.alpha / r;
  out.residual = pair.residual;
  out.x.assign(part_sizes.size(), 0.0);
  // Within a part all coordinates coincide; read each part's first entry.
  std::size_t offset = 0;
  for (std::size_t p = 0; p < part_sizes.size(); ++p) {
    out.x[p] = pair.vector[offset];
    offset += static_cast<std::size_t>(part_sizes[p]);
  }
  return out;
}

}  // namespace frugal
