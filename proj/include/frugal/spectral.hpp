#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frugal/dependency.hpp"

namespace frugal {

inline constexpr double kEigenResidual = 1e-9;
inline constexpr std::size_t kPowerIterationCap = 1000000;

struct Eigenpair {
  double alpha = 0.0;
  std::vector<double> vector;  // strictly positive, max entry 1
  double residual = 0.0;       // ||A v - alpha v||_inf
  std::size_t iterations = 0;
};

// Perron pair of a connected 0/1 symmetric adjacency matrix, by power
// iteration on A + I from the all-ones vector. Throws ConvergenceError when the
// residual stays above 1e-9 * max(1, alpha) after the iteration cap.
Eigenpair principal_eigen(const std::vector<std::vector<char>>& adjacency,
                          std::size_t max_iterations = kPowerIterationCap);

struct SpectralLift {
  double alpha = 0.0;
  // One entry per agent of the universe; 0 for agents outside the lifted set.
  std::vector<double> weights;
  std::vector<double> component_alphas;
  double residual = 0.0;  // worst relative residual over components
};

SpectralLift lift(const DependencyGraph& h, std::size_t universe);

struct LozengeSolution {
  double beta = 0.0;
  std::vector<double> x;  // one weight per part, max 1
  double alpha = 0.0;     // principal eigenvalue of the multipartite graph
  double residual = 0.0;
};

// Positive solution of beta * r * x_i = sum_{j != i} |S_j| x_j, found through
// the complete multipartite graph with the given part sizes.
LozengeSolution solve_lozenge(std::span<const int> part_sizes, int r);

}  // namespace frugal
