#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "frugal/error.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {

std::optional<std::pair<AgentSet, double>> cheapest_feasible_set(
    const SetSystem& system, std::span<const double> bids, const AgentSet& within) {
  using Result = std::optional<std::pair<AgentSet, double>>;
  return std::visit(
      [&](const auto& s) -> Result {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KPathSystem>) {
          if (max_flow_value(s.graph, within) < s.k) return std::nullopt;
          IntegralFlow f = min_cost_flow(s.graph, bids, s.k, within);
          return std::make_pair(std::move(f.edges), f.cost);
        } else if constexpr (std::is_same_v<T, VertexCoverSystem>) {
          auto cover = min_weight_cover(s.graph, bids, within);
          if (!cover) return std::nullopt;
          const double cost = cover->total(bids);
          return std::make_pair(std::move(*cover), cost);
        } else if constexpr (std::is_same_v<T, ROutOfKSystem>) {
          std::vector<std::pair<double, std::size_t>> keyed;
          for (std::size_t i = 0; i < s.groups.size(); ++i) {
            const auto& grp = s.groups[i];
            if (!std::all_of(grp.begin(), grp.end(),
                             [&](AgentId a) { return within.contains(a); })) {
              continue;
            }
            double sum = 0.0;
            for (AgentId a : grp) sum += bids[a];
            keyed.emplace_back(sum, i);
          }
          if (keyed.size() < static_cast<std::size_t>(s.r)) return std::nullopt;
          std::sort(keyed.begin(), keyed.end());
          AgentSet chosen(s.num_agents);
          double cost = 0.0;
          for (std::size_t i = 0; i < static_cast<std::size_t>(s.r); ++i) {
            cost += keyed[i].first;
            for (AgentId a : s.groups[keyed[i].second]) chosen.insert(a);
          }
          return std::make_pair(std::move(chosen), cost);
        } else {
          Result best;
          for (auto& set : minimal_feasible_sets_within(system, within)) {
            const double cost = set.total(bids);
            if (!best) {
              best = std::make_pair(std::move(set), cost);
              continue;
            }
            const double tol = kCostTolerance * std::max(1.0, std::abs(best->second));
            if (cost < best->second - tol ||
                (cost <= best->second + tol && canonical_less(set, best->first))) {
              best = std::make_pair(std::move(set), cost);
            }
          }
          return best;
        }
      },
      system.variant());
}

MechanismOutcome vcg(const SetSystem& system, std::span<const double> bids) {
  const std::size_t n = system.num_agents();
  Pruner pruner;
  pruner.prune = [n](std::span<const double>) { return AgentSet::all(n); };
  pruner.threshold = [](std::span<const double>, AgentId) { return Threshold::infinite(); };
  Lifter unit = [n](const SetSystem&, const AgentSet&) {
    SpectralLift out;
    out.alpha = std::numeric_limits<double>::quiet_NaN();
    out.weights.assign(n, 1.0);
    return out;
  };
  Selector selector;
  selector.select = [&](const AgentSet& within, std::span<const double> b) {
    auto best = cheapest_feasible_set(system, b, within);
    if (!best) throw MonopolyError("no feasible set");
    return best->first;
  };
  selector.optimum = [&](const AgentSet& within,
                         std::span<const double> b) -> std::optional<double> {
    auto best = cheapest_feasible_set(system, b, within);
    if (!best) return std::nullopt;
    return best->second;
  };
  return run_pruning_lifting(system, bids, pruner, selector, unit, "vcg");
}

bool is_known_mechanism(const std::string& name) {
  static const char* const kNames[] = {"kpath", "vertex-cover", "vertex-cover-approx",
                                       "r-out-of-k", "sqrt", "vcg"};
  return std::find(std::begin(kNames), std::end(kNames), name) != std::end(kNames);
}

MechanismOutcome run_mechanism(const std::string& name, const SetSystem& system,
                               std::span<const double> bids) {
  auto mismatch = [&]() {
    return ValidationError("mechanism '" + name + "' does not apply to a " +
                           system.kind_name() + " instance");
  };
  if (name == "vcg") return vcg(system, bids);
  if (name == "kpath" || name == "sqrt") {
    const auto* s = system.as<KPathSystem>();
    if (!s) throw mismatch();
    if (name == "kpath") return kpath_mechanism(s->graph, bids, s->k);
    if (s->k != 1) throw ValidationError("the sqrt mechanism is defined for k = 1 only");
    return sqrt_mechanism(s->graph, bids);
  }
  if (name == "vertex-cover" || name == "vertex-cover-approx") {
    const auto* s = system.as<VertexCoverSystem>();
    if (!s) throw mismatch();
    return vertex_cover_mechanism(
        s->graph, bids, name == "vertex-cover" ? CoverMode::Exact : CoverMode::Approx2);
  }
  if (name == "r-out-of-k") {
    const auto* s = system.as<ROutOfKSystem>();
    if (!s) throw mismatch();
    return r_out_of_k_mechanism(*s, bids);
  }
  throw ValidationError("unknown mechanism '" + name + "'");
}

}  // namespace frugal
