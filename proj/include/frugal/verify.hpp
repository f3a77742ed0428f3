#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frugal/dependency.hpp"
#include "frugal/io.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {

struct CheckResult {
  std::string instance;
  std::string check;
  bool passed = true;
  // Set when the approximate cover rule turned out non-monotone on this
  // instance, so its thresholds are undefined and the check did not run.
  bool skipped = false;
  std::string detail;
};

// Runs every invariant that applies to the instance's kind.
std::vector<CheckResult> verify_instance(const Instance& instance, const std::string& label);

struct VerifyOptions {
  std::uint64_t seed = 1;
  int count = 10;  // generated instances per sweep family
};

// The invariant suite over the given instances plus seeded sweeps of every
// generator family.
std::vector<CheckResult> verify_suite(const std::vector<std::pair<std::string, Instance>>& fixtures,
                                      const VerifyOptions& options);

// For a path v_1..v_l of G* and any other node v, the positions r with v
// adjacent to v_r form a contiguous range.
bool has_interval_property(const DiGraph& g, const AgentSet& gstar, const DependencyGraph& h);

// The component count of H equals the number of articulation parts of G*,
// each component is one part, and H is connected iff G* has no interior
// articulation point.
bool matches_articulation_structure(const DiGraph& g, const AgentSet& gstar,
                                    const DependencyGraph& h);

// Network of parallel s-t paths, one per group, whose edge ids equal the agent
// ids. Requires each group to be a consecutive block of ids in order.
DiGraph parallel_group_network(const ROutOfKSystem& system);

// Largest gain in utility (payment - cost if winning) from replacing agent e's
// true cost by `deviation`.
double deviation_gain(const std::string& mechanism, const SetSystem& system,
                      std::span<const double> costs, AgentId e, double deviation);

}  // namespace frugal
