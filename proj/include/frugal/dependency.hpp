#pragma once

#include <cstddef>
#include <vector>

#include "frugal/agent_set.hpp"
#include "frugal/core.hpp"

namespace frugal {

// Undirected graph on the surviving agents: two agents are adjacent when no
// feasible set avoids both of them.
struct DependencyGraph {
  std::vector<AgentId> nodes;                 // increasing agent id
  std::vector<std::vector<char>> adjacency;   // indexed by position in `nodes`
  std::vector<std::vector<AgentId>> components;  // ordered by smallest member

  std::size_t size() const { return nodes.size(); }
  // Position of agent `a` in `nodes`; throws std::out_of_range if absent.
  std::size_t index_of(AgentId a) const;
  bool adjacent(AgentId a, AgentId b) const;
  std::size_t num_edges() const;
};

// Pair test through the feasibility oracle (max-flow for k-path systems).
// Throws MonopolyError unless `surviving` is monopoly-free.
DependencyGraph build_dependency(const SetSystem& system, const AgentSet& surviving);

// Pair test against an explicit list of minimal feasible sets: adjacent iff
// every listed set meets {e, e'}.
DependencyGraph build_dependency_from_sets(const std::vector<AgentSet>& minimal_sets,
                                           const AgentSet& surviving);

// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<AgentId>> components(const DependencyGraph& h);

}  // namespace frugal
