#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "frugal/agent_set.hpp"
#include "frugal/graph.hpp"

namespace frugal {

inline constexpr std::size_t kDefaultEnumerationCap = 100000;

// A unit flow given by its edge support: the union of `size` edge-disjoint
// s-t paths with no surplus edges.
struct IntegralFlow {
  AgentSet edges;
  int size = 0;
  double cost = 0.0;
};

// C(0..M): cheapest flow cost at every integral size up to the max flow M.
struct FlowCostCurve {
  std::vector<double> values;
  int max_flow() const { return static_cast<int>(values.size()) - 1; }
};

struct ArticulationDecomposition {
  // s = points.front(), t = points.back(); parts[i] spans points[i]..points[i+1].
  std::vector<VertexId> points;
  std::vector<AgentSet> parts;
  std::size_t num_parts() const { return parts.size(); }
};

int max_flow_value(const DiGraph& g, const AgentSet& allowed);
int max_flow_value(const DiGraph& g);

// Cost of the cheapest integral flow of size k inside `allowed`, or nullopt if
// the max flow there is below k.
std::optional<double> min_flow_cost(const DiGraph& g, std::span<const double> costs,
                                    int k, const AgentSet& allowed);

// Cheapest integral k-flow inside `allowed`. Among equal-cost flows the one
// smallest under canonical_less is returned, which also makes the support
// free of zero-cost cycles. Throws InfeasibleError when max flow < k.
IntegralFlow min_cost_flow(const DiGraph& g, std::span<const double> costs, int k,
                           const AgentSet& allowed);
IntegralFlow min_cost_flow(const DiGraph& g, std::span<const double> costs, int k);

// The k-path pruning step: the cheapest (k+1)-flow G*(b).
IntegralFlow cheapest_kplus1_subgraph(const DiGraph& g, std::span<const double> bids,
                                      int k);

FlowCostCurve flow_cost_curve(const DiGraph& g, std::span<const double> costs);
FlowCostCurve flow_cost_curve(const DiGraph& g, std::span<const double> costs,
                              const AgentSet& allowed);

// Longest s-t path inside an acyclic subgraph. Throws CycleError on a cycle and
// InfeasibleError if the subgraph has no s-t path.
double longest_path_dag(const DiGraph& g, const AgentSet& subgraph,
                        std::span<const double> costs);

// Longest s-t walk inside an arbitrary subgraph: +inf if a positive-cost cycle
// lies on some s-t walk, -inf if t is unreachable.
double longest_walk(const DiGraph& g, const AgentSet& subgraph,
                    std::span<const double> costs);

// All simple s-t paths inside `allowed`, as edge sequences, in DFS order.
std::vector<std::vector<EdgeId>> enumerate_st_paths(
    const DiGraph& g, const AgentSet& allowed,
    std::size_t cap = kDefaultEnumerationCap);

// Distinct edge sets that are unions of `count` pairwise edge-disjoint simple
// s-t paths inside `allowed`, sorted lexicographically.
std::vector<AgentSet> enumerate_path_unions(const DiGraph& g, const AgentSet& allowed,
                                            int count,
                                            std::size_t cap = kDefaultEnumerationCap);

// Exact minimum, over all (k+1)-flows, of the longest s-t path inside the flow.
double delta_kplus1(const DiGraph& g, std::span<const double> costs, int k,
                    std::size_t cap = kDefaultEnumerationCap);

// Ordered articulation points of an acyclic union of edge-disjoint s-t paths
// and the parts between consecutive points. Throws StructureError otherwise.
ArticulationDecomposition articulation_decomposition(const DiGraph& g,
                                                     const AgentSet& gstar);

// Splits an acyclic unit flow into edge-disjoint s-t paths.
std::vector<std::vector<EdgeId>> decompose_paths(const DiGraph& g,
                                                 const AgentSet& flow);

// Searches the shortest-path subgraph for k+1 edge-disjoint shortest s-t
// paths. Present whenever every single-edge deletion keeps a k-flow of the
// same weight.
std::optional<IntegralFlow> verify_shortest_path_flow(const DiGraph& g,
                                                      std::span<const double> weights,
                                                      int k,
                                                      double tolerance = kCostTolerance);

}  // namespace frugal
