#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frugal/agent_set.hpp"
#include "frugal/core.hpp"
#include "frugal/flows.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {

inline constexpr std::size_t kNuMaxReferenceSize = 12;
inline constexpr double kWitnessTolerance = 1e-7;

struct BenchmarkValue {
  double value = 0.0;
  // Full bid vector: the optimized bids on the reference set, costs elsewhere.
  std::vector<double> witness;
  AgentSet reference;
  // Alternative sets held tight by the nu witness (empty for mu).
  std::vector<AgentSet> tight_sets;
};

// Cheapest feasible set; among equal costs the lexicographically smallest
// minimal feasible set.
AgentSet reference_set(const SetSystem& system, std::span<const double> costs);

// Largest total bid on the reference set such that every bid is at least its
// cost and no feasible set undercuts it.
BenchmarkValue compute_mu(const SetSystem& system, std::span<const double> costs);

// Smallest total bid on the reference set under the same constraints, with
// each member additionally facing a tight alternative set that excludes it.
// Throws BenchmarkError when no bid vector meets the tightness condition and
// SizeError when the reference set exceeds `max_reference` agents.
BenchmarkValue compute_nu(const SetSystem& system, std::span<const double> costs,
                          std::size_t max_reference = kNuMaxReferenceSize);

// How far `bids` is from satisfying the benchmark constraints (0 if it does).
// With `tight` set, the tightness condition is included.
double benchmark_violation(const SetSystem& system, std::span<const double> costs,
                           const AgentSet& reference, std::span<const double> bids,
                           bool tight);

double nu_lower_kpath(const DiGraph& g, std::span<const double> costs, int k);
double mu_lower_flow(const DiGraph& g, std::span<const double> costs, int k);

// Size of the smallest maximal clique containing v.
int rho_v(const UndirectedGraph& g, VertexId v);

// Largest principal eigenvalue of the dependency graph over all minimal
// (k+1)-flows, and one flow attaining it.
struct AlphaKPlus1 {
  double alpha = 0.0;
  AgentSet argmax;
};
AlphaKPlus1 alpha_kplus1(const DiGraph& g, int k);

// Largest lozenge eigenvalue over all choices of r+1 groups.
double alpha_r_out_of_k(const ROutOfKSystem& system);

struct ProbeRow {
  AgentId agent = 0;
  double x = 0.0;
  double payment = 0.0;
  double alpha_x = 0.0;
  double nu = 0.0;
  double mu = 0.0;
};

struct ProbeTable {
  std::string mechanism;
  AgentSet distinguished;
  double alpha = 0.0;
  std::vector<ProbeRow> rows;
  double max_payment_over_x = 0.0;
};

// Runs `mechanism` on the probe vectors c_{e,x}: x on e, 0 on the rest of
// `distinguished`, n + 1 on every other agent, for x = i / resolution, i = 0..resolution.
ProbeTable probe_payments(const SetSystem& system, const std::string& mechanism,
                          const AgentSet& distinguished, int resolution);

struct FrugalityReport {
  std::string mechanism;
  double payment = 0.0;
  double alpha = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  double ratio_nu = 0.0;
  double ratio_mu = 0.0;
  double bound_nu = 0.0;  // NaN when no ceiling applies
  double bound_mu = 0.0;
  bool violation = false;
  std::string note;
};

// Ceilings on p/nu and p/mu for the mechanism family (NaN if none applies).
std::pair<double, double> frugality_bounds(const std::string& mechanism,
                                           const SetSystem& system,
                                           const MechanismOutcome& outcome);

std::vector<FrugalityReport> frugality_report(const SetSystem& system,
                                              std::span<const double> costs,
                                              const std::vector<std::string>& mechanisms);

}  // namespace frugal
