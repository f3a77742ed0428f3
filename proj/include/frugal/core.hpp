#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frugal/agent_set.hpp"
#include "frugal/graph.hpp"

namespace frugal {

inline constexpr std::size_t kMinimalSetCap = 100000;

// Feasible sets given by listing; a subset is feasible if it contains one.
struct ExplicitFamily {
  std::size_t num_agents = 0;
  std::vector<AgentSet> sets;
};

// Agents are edges; a subset is feasible if it carries k edge-disjoint s-t paths.
struct KPathSystem {
  DiGraph graph;
  int k = 1;
};

// Agents are vertices; a subset is feasible if it covers every edge.
struct VertexCoverSystem {
  UndirectedGraph graph;
};

// Agents are partitioned into groups; a subset is feasible if it contains r
// complete groups.
struct ROutOfKSystem {
  std::size_t num_agents = 0;
  std::vector<std::vector<AgentId>> groups;
  int r = 1;
};

class SetSystem {
 public:
  using Variant =
      std::variant<ExplicitFamily, KPathSystem, VertexCoverSystem, ROutOfKSystem>;

  // Each constructor validates the structural invariants of its kind.
  explicit SetSystem(ExplicitFamily family);
  explicit SetSystem(KPathSystem system);
  explicit SetSystem(VertexCoverSystem system);
  explicit SetSystem(ROutOfKSystem system);

  std::size_t num_agents() const;
  const Variant& variant() const { return data_; }
  // "explicit", "kpath", "vertex-cover" or "r-out-of-k".
  std::string kind_name() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&data_);
  }

 private:
  Variant data_;
};

bool is_feasible(const SetSystem& system, const AgentSet& subset);

// True iff `surviving` is feasible and no single agent of it is indispensable.
bool is_monopoly_free(const SetSystem& system, const AgentSet& surviving);
bool is_monopoly_free(const SetSystem& system);

// Inclusion-minimal feasible sets, sorted lexicographically.
// Throws CapExceededError once more than `cap` sets are found.
std::vector<AgentSet> minimal_feasible_sets(const SetSystem& system,
                                            std::size_t cap = kMinimalSetCap);

// The family of feasible sets inside `surviving`, as an explicit system over
// the same agent ids. Throws MonopolyError unless the restriction is
// monopoly-free.
SetSystem restrict_system(const SetSystem& system, const AgentSet& surviving,
                          std::size_t cap = kMinimalSetCap);

// Minimal feasible sets contained in `surviving`.
std::vector<AgentSet> minimal_feasible_sets_within(const SetSystem& system,
                                                   const AgentSet& surviving,
                                                   std::size_t cap = kMinimalSetCap);

void check_bids(const SetSystem& system, std::span<const double> bids);

}  // namespace frugal
