#include <algorithm>
#include <cmath>
#include <string>

#include "frugal/dependency.hpp"
#include "frugal/error.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {
namespace {

void require_kplus1_paths(const DiGraph& g, int k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  const int flow = max_flow_value(g);
  if (flow < k + 1) {
    throw InfeasibleError("network has " + std::to_string(flow) +
                          " edge-disjoint s-t paths; k-path auction needs " +
                          std::to_string(k + 1));
  }
}

Threshold pruning_threshold(const DiGraph& g, std::span<const double> bids, int k,
                            AgentId e) {
  const auto with = min_flow_cost(g, bids, k + 1, g.all_edges());
  const auto without = min_flow_cost(g, bids, k + 1, g.all_edges().without(e));
  if (!without) return Threshold::infinite();
  return Threshold::at(*without - *with + bids[e]);
}

// Walks from `from` to `to` inside `part`, leaving through the out-edge `first`.
std::vector<EdgeId> walk_segment(const DiGraph& g, const AgentSet& part, EdgeId first,
                                 VertexId to) {
  std::vector<EdgeId> path{first};
  VertexId v = g.arc(first).head;
  while (v != to) {
    EdgeId next = -1;
    for (EdgeId e : g.out_edges(v)) {
      if (part.contains(e)) {
        next = e;
        break;
      }
    }
    if (next < 0 || path.size() > part.size()) {
      throw StructureError("segment is not a pair of internally disjoint paths");
    }
    path.push_back(next);
    v = g.arc(next).head;
  }
  return path;
}

}  // namespace

MechanismOutcome kpath_mechanism(const DiGraph& g, std::span<const double> bids, int k,
                                 ThresholdMethod method) {
  require_kplus1_paths(g, k);
  const SetSystem system(KPathSystem{g, k});
  Pruner pruner;
  pruner.prune = [&](std::span<const double> b) {
    return cheapest_kplus1_subgraph(g, b, k).edges;
  };
  Selector selector;
  selector.select = [&](const AgentSet& within, std::span<const double> scaled) {
    return min_cost_flow(g, scaled, k, within).edges;
  };
  if (method == ThresholdMethod::Analytic) {
    pruner.threshold = [&](std::span<const double> b, AgentId e) {
      return pruning_threshold(g, b, k, e);
    };
    selector.optimum = [&](const AgentSet& within, std::span<const double> scaled) {
      return min_flow_cost(g, scaled, k, within);
    };
  }
  return run_pruning_lifting(system, bids, pruner, selector, {}, "kpath");
}

ThresholdPair analytic_thresholds_kpath(const DiGraph& g, std::span<const double> bids,
                                        int k, AgentId agent) {
  require_kplus1_paths(g, k);
  if (agent < 0 || static_cast<std::size_t>(agent) >= g.num_edges()) {
    throw ValidationError("edge " + std::to_string(agent) + " does not exist");
  }
  ThresholdPair out;
  out.t1 = pruning_threshold(g, bids, k, agent);
  const AgentSet gstar = cheapest_kplus1_subgraph(g, bids, k).edges;
  if (!gstar.contains(agent)) {
    out.t2 = Threshold::at(0.0);
    return out;
  }
  const SetSystem system(KPathSystem{g, k});
  const SpectralLift weights = lift(build_dependency(system, gstar), g.num_edges());
  std::vector<double> scaled(g.num_edges(), 0.0);
  for (AgentId e : gstar.members()) scaled[e] = bids[e] / weights.weights[e];
  const double best = *min_flow_cost(g, scaled, k, gstar);
  const auto without = min_flow_cost(g, scaled, k, gstar.without(agent));
  out.t2 = without ? Threshold::at(weights.weights[agent] *
                                   (*without - best + scaled[agent]))
                   : Threshold::infinite();
  return out;
}

MechanismOutcome sqrt_mechanism(const DiGraph& g, std::span<const double> bids) {
  require_kplus1_paths(g, 1);
  const std::size_t m = g.num_edges();
  if (bids.size() != m) throw ValidationError("bid vector length differs from edge count");
  MechanismOutcome out;
  out.mechanism = "sqrt";
  const IntegralFlow gstar = min_cost_flow(g, bids, 2);
  out.pruned = gstar.edges;
  const ArticulationDecomposition dec = articulation_decomposition(g, gstar.edges);

  out.lift.weights.assign(m, 0.0);
  out.scaled_bids.assign(m, 0.0);
  out.winners = AgentSet(m);
  out.t1.assign(m, Threshold::infinite());
  out.t2.assign(m, Threshold::infinite());
  out.payments.assign(m, 0.0);

  for (std::size_t i = 0; i < dec.num_parts(); ++i) {
    const AgentSet& part = dec.parts[i];
    std::vector<std::vector<EdgeId>> paths;
    for (EdgeId e : g.out_edges(dec.points[i])) {
      if (part.contains(e)) paths.push_back(walk_segment(g, part, e, dec.points[i + 1]));
    }
    if (paths.size() != 2) {
      throw StructureError("segment " + std::to_string(i) + " does not hold two paths");
    }
    const double len[2] = {static_cast<double>(paths[0].size()),
                           static_cast<double>(paths[1].size())};
    // Weight 1/sqrt(|P|) per path, rescaled so the segment maximum is 1.
    const double norm = std::sqrt(std::min(len[0], len[1]));
    double cost[2] = {0.0, 0.0};
    for (int p = 0; p < 2; ++p) {
      for (EdgeId e : paths[p]) {
        out.lift.weights[e] = norm / std::sqrt(len[p]);
        out.scaled_bids[e] = bids[e] / out.lift.weights[e];
        cost[p] += out.scaled_bids[e];
      }
    }
    const double alpha = std::sqrt(len[0] * len[1]);
    out.lift.component_alphas.push_back(alpha);
    out.lift.alpha = std::max(out.lift.alpha, alpha);

    const EdgeId top = std::max(*std::max_element(paths[0].begin(), paths[0].end()),
                                *std::max_element(paths[1].begin(), paths[1].end()));
    int pick;
    if (std::abs(cost[0] - cost[1]) <= kCostTolerance * std::max(1.0, cost[0] + cost[1])) {
      pick = std::find(paths[0].begin(), paths[0].end(), top) == paths[0].end() ? 0 : 1;
    } else {
      pick = cost[0] < cost[1] ? 0 : 1;
    }
    for (EdgeId e : paths[pick]) {
      out.winners.insert(e);
      const double w = out.lift.weights[e];
      out.t2[e] = Threshold::at(w * (cost[1 - pick] - cost[pick] + out.scaled_bids[e]));
    }
    out.components.push_back(part.members());
  }
  std::sort(out.components.begin(), out.components.end());

  for (EdgeId e : out.winners.members()) {
    const auto without = min_flow_cost(g, bids, 2, g.all_edges().without(e));
    out.t1[e] = without ? Threshold::at(*without - gstar.cost + bids[e])
                        : Threshold::infinite();
    const Threshold pay = min(out.t1[e], out.t2[e]);
    out.payments[e] = pay.value();
    out.total_payment += pay.value();
  }
  return out;
}

}  // namespace frugal
