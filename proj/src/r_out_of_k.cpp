#include <algorithm>
#include <numeric>
#include <string>

#include "frugal/error.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {
namespace {

double group_total(const std::vector<AgentId>& group, std::span<const double> values) {
  double sum = 0.0;
  for (AgentId a : group) sum += values[a];
  return sum;
}

// Group indices ordered by (total, index).
std::vector<std::size_t> rank_groups(const ROutOfKSystem& sys, std::span<const double> values,
                                     const std::vector<std::size_t>& candidates) {
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(candidates.size());
  for (std::size_t i : candidates) keyed.emplace_back(group_total(sys.groups[i], values), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> out;
  out.reserve(keyed.size());
  for (const auto& kv : keyed) out.push_back(kv.second);
  return out;
}

std::vector<std::size_t> groups_within(const ROutOfKSystem& sys, const AgentSet& within) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sys.groups.size(); ++i) {
    const auto& grp = sys.groups[i];
    if (std::all_of(grp.begin(), grp.end(), [&](AgentId a) { return within.contains(a); })) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t group_of(const ROutOfKSystem& sys, AgentId a) {
  for (std::size_t i = 0; i < sys.groups.size(); ++i) {
    const auto& grp = sys.groups[i];
    if (std::find(grp.begin(), grp.end(), a) != grp.end()) return i;
  }
  throw ValidationError("agent " + std::to_string(a) + " belongs to no group");
}

AgentSet union_of(const ROutOfKSystem& sys, std::span<const std::size_t> picked) {
  AgentSet s(sys.num_agents);
  for (std::size_t i : picked) {
    for (AgentId a : sys.groups[i]) s.insert(a);
  }
  return s;
}

}  // namespace

MechanismOutcome r_out_of_k_mechanism(const ROutOfKSystem& input,
                                      std::span<const double> bids,
                                      ThresholdMethod method) {
  const SetSystem system(input);
  const ROutOfKSystem& sys = *system.as<ROutOfKSystem>();
  const std::size_t keep = static_cast<std::size_t>(sys.r) + 1;
  if (sys.groups.size() < keep) {
    throw InfeasibleError("r-out-of-k auction needs at least r+1 = " + std::to_string(keep) +
                          " groups, got " + std::to_string(sys.groups.size()));
  }
  std::vector<std::size_t> all(sys.groups.size());
  std::iota(all.begin(), all.end(), std::size_t{0});

  Pruner pruner;
  pruner.prune = [&](std::span<const double> b) {
    auto ranked = rank_groups(sys, b, all);
    ranked.resize(keep);
    return union_of(sys, ranked);
  };
  if (method == ThresholdMethod::Analytic) {
    // A group survives while its total stays at or below the (r+1)-th
    // smallest total among the other groups.
    pruner.threshold = [&](std::span<const double> b, AgentId e) {
      const std::size_t home = group_of(sys, e);
      std::vector<double> others;
      for (std::size_t i = 0; i < sys.groups.size(); ++i) {
        if (i != home) others.push_back(group_total(sys.groups[i], b));
      }
      if (others.size() < keep) return Threshold::infinite();
      std::nth_element(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(keep - 1),
                       others.end());
      return Threshold::at(b[e] + others[keep - 1] - group_total(sys.groups[home], b));
    };
  }

  Lifter lifter = [&](const SetSystem&, const AgentSet& surviving) {
    const auto kept = groups_within(sys, surviving);
    std::vector<int> sizes;
    for (std::size_t i : kept) sizes.push_back(static_cast<int>(sys.groups[i].size()));
    const LozengeSolution sol = solve_lozenge(sizes, sys.r);
    SpectralLift out;
    out.alpha = sol.alpha;
    out.component_alphas = {sol.alpha};
    out.residual = sol.residual / std::max(1.0, sol.alpha);
    out.weights.assign(sys.num_agents, 0.0);
    for (std::size_t p = 0; p < kept.size(); ++p) {
      for (AgentId a : sys.groups[kept[p]]) out.weights[a] = sol.x[p];
    }
    return out;
  };

  Selector selector;
  // Drops the most expensive scaled group until r remain. Totals within the
  // cost tolerance count as tied and the higher index is dropped first.
  selector.select = [&](const AgentSet& within, std::span<const double> scaled) {
    auto kept = groups_within(sys, within);
    if (kept.size() < static_cast<std::size_t>(sys.r)) {
      throw StructureError("fewer than r groups survive");
    }
    while (kept.size() > static_cast<std::size_t>(sys.r)) {
      double top = 0.0;
      for (std::size_t i : kept) top = std::max(top, group_total(sys.groups[i], scaled));
      const double floor = top - kCostTolerance * std::max(1.0, top);
      std::size_t drop = kept.size();
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (group_total(sys.groups[kept[j]], scaled) >= floor) drop = j;
      }
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    return union_of(sys, kept);
  };
  if (method == ThresholdMethod::Analytic) {
    selector.optimum = [&](const AgentSet& within,
                           std::span<const double> scaled) -> std::optional<double> {
      auto ranked = rank_groups(sys, scaled, groups_within(sys, within));
      if (ranked.size() < static_cast<std::size_t>(sys.r)) return std::nullopt;
      double sum = 0.0;
      for (std::size_t i = 0; i < static_cast<std::size_t>(sys.r); ++i) {
        sum += group_total(sys.groups[ranked[i]], scaled);
      }
      return sum;
    };
  }
  return run_pruning_lifting(system, bids, pruner, selector, lifter, "r-out-of-k");
}

}  // namespace frugal
