#include "frugal/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frugal/error.hpp"
#include "frugal/flows.hpp"

namespace frugal {
namespace {

void check_subset(const SetSystem& system, const AgentSet& subset) {
  if (subset.universe() != system.num_agents()) {
    throw ValidationError("agent set over " + std::to_string(subset.universe()) +
                          " agents used with a system of " +
                          std::to_string(system.num_agents()));
  }
}

// Bron-Kerbosch with pivoting over the complement graph: each maximal clique
// there is a maximal independent set of the cover graph.
void maximal_independent_sets(const UndirectedGraph& g, std::vector<AgentId>& current,
                              std::vector<AgentId> candidates,
                              std::vector<AgentId> excluded,
                              std::vector<std::vector<AgentId>>& out, std::size_t cap) {
  if (candidates.empty() && excluded.empty()) {
    if (out.size() >= cap) {
      throw CapExceededError("too many minimal vertex covers", cap);
    }
    out.push_back(current);
    return;
  }
  auto independent = [&](AgentId u, AgentId v) { return u != v && !g.adjacent(u, v); };
  AgentId pivot = -1;
  std::size_t best = 0;
  for (const auto* pool : {&candidates, &excluded}) {
    for (AgentId u : *pool) {
      std::size_t hits = 0;
      for (AgentId v : candidates) hits += independent(u, v) ? 1 : 0;
      if (pivot < 0 || hits > best) {
        pivot = u;
        best = hits;
      }
    }
  }
  std::vector<AgentId> branch;
  for (AgentId v : candidates) {
    if (!independent(pivot, v)) branch.push_back(v);
  }
  for (AgentId v : branch) {
    std::vector<AgentId> next_candidates;
    std::vector<AgentId> next_excluded;
    for (AgentId u : candidates) {
      if (independent(u, v)) next_candidates.push_back(u);
    }
    for (AgentId u : excluded) {
      if (independent(u, v)) next_excluded.push_back(u);
    }
    current.push_back(v);
    maximal_independent_sets(g, current, std::move(next_candidates),
                             std::move(next_excluded), out, cap);
    current.pop_back();
    candidates.erase(std::find(candidates.begin(), candidates.end(), v));
    excluded.push_back(v);
  }
}

std::vector<AgentSet> minimal_covers(const UndirectedGraph& g, std::size_t cap) {
  std::vector<AgentId> all(static_cast<std::size_t>(g.num_vertices()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<AgentId>(i);
  std::vector<std::vector<AgentId>> independents;
  std::vector<AgentId> current;
  maximal_independent_sets(g, current, all, {}, independents, cap);
  std::vector<AgentSet> out;
  out.reserve(independents.size());
  for (const auto& ind : independents) {
    out.push_back(AgentSet(all.size(), ind).complement());
  }
  return out;
}

std::vector<AgentSet> minimal_group_unions(const ROutOfKSystem& sys,
                                           const AgentSet& surviving, std::size_t cap) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < sys.groups.size(); ++i) {
    const auto& grp = sys.groups[i];
    if (std::all_of(grp.begin(), grp.end(),
                    [&](AgentId a) { return surviving.contains(a); })) {
      usable.push_back(i);
    }
  }
  std::vector<AgentSet> out;
  std::vector<std::size_t> pick;
  auto choose = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == static_cast<std::size_t>(sys.r)) {
      if (out.size() >= cap) throw CapExceededError("too many group unions", cap);
      AgentSet s(sys.num_agents);
      for (std::size_t i : pick) {
        for (AgentId a : sys.groups[usable[i]]) s.insert(a);
      }
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t i = start; i < usable.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);
  return out;
}

std::vector<AgentSet> keep_minimal(std::vector<AgentSet> sets) {
  std::sort(sets.begin(), sets.end(),
            [](const AgentSet& a, const AgentSet& b) { return a.size() < b.size(); });
  std::vector<AgentSet> out;
  for (auto& s : sets) {
    const bool dominated = std::any_of(out.begin(), out.end(), [&](const AgentSet& m) {
      return m.is_subset_of(s);
    });
    if (!dominated) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

SetSystem::SetSystem(ExplicitFamily family) : data_(std::move(family)) {
  const auto& f = std::get<ExplicitFamily>(data_);
  if (f.sets.empty()) throw ValidationError("explicit family lists no feasible set");
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    if (f.sets[i].universe() != f.num_agents) {
      throw ValidationError("feasible set " + std::to_string(i) +
                            " is not over the agent range");
    }
  }
}

SetSystem::SetSystem(KPathSystem system) : data_(std::move(system)) {
  const auto& s = std::get<KPathSystem>(data_);
  if (s.k < 1) throw ValidationError("k must be at least 1");
  if (max_flow_value(s.graph) < s.k) {
    throw ValidationError("network has fewer than k edge-disjoint s-t paths");
  }
}

SetSystem::SetSystem(VertexCoverSystem system) : data_(std::move(system)) {}

SetSystem::SetSystem(ROutOfKSystem system) : data_(std::move(system)) {
  const auto& s = std::get<ROutOfKSystem>(data_);
  if (s.r < 1) throw ValidationError("r must be at least 1");
  if (s.groups.size() < static_cast<std::size_t>(s.r)) {
    throw ValidationError("fewer groups than r");
  }
  std::vector<int> seen(s.num_agents, 0);
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    if (s.groups[i].empty()) {
      throw ValidationError("group " + std::to_string(i) + " is empty");
    }
    for (AgentId a : s.groups[i]) {
      if (a < 0 || static_cast<std::size_t>(a) >= s.num_agents) {
        throw ValidationError("group " + std::to_string(i) + " names agent " +
                              std::to_string(a) + " outside the agent range");
      }
      if (seen[a]++) {
        throw ValidationError("agent " + std::to_string(a) + " is in two groups");
      }
    }
  }
  for (std::size_t a = 0; a < s.num_agents; ++a) {
    if (!seen[a]) {
      throw ValidationError("agent " + std::to_string(a) + " belongs to no group");
    }
  }
}

std::size_t SetSystem::num_agents() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KPathSystem>) {
          return s.graph.num_edges();
        } else if constexpr (std::is_same_v<T, VertexCoverSystem>) {
          return static_cast<std::size_t>(s.graph.num_vertices());
        } else {
          return s.num_agents;
        }
      },
      data_);
}

std::string SetSystem::kind_name() const {
  switch (data_.index()) {
    case 0: return "explicit";
    case 1: return "kpath";
    case 2: return "vertex-cover";
    default: return "r-out-of-k";
  }
}

bool is_feasible(const SetSystem& system, const AgentSet& subset) {
  check_subset(system, subset);
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitFamily>) {
          return std::any_of(s.sets.begin(), s.sets.end(),
                             [&](const AgentSet& f) { return f.is_subset_of(subset); });
        } else if constexpr (std::is_same_v<T, KPathSystem>) {
          return max_flow_value(s.graph, subset) >= s.k;
        } else if constexpr (std::is_same_v<T, VertexCoverSystem>) {
          for (auto [u, v] : s.graph.edges()) {
            if (!subset.contains(u) && !subset.contains(v)) return false;
          }
          return true;
        } else {
          int full = 0;
          for (const auto& grp : s.groups) {
            if (std::all_of(grp.begin(), grp.end(),
                            [&](AgentId a) { return subset.contains(a); })) {
              ++full;
            }
          }
          return full >= s.r;
        }
      },
      system.variant());
}

bool is_monopoly_free(const SetSystem& system, const AgentSet& surviving) {
  if (!is_feasible(system, surviving)) return false;
  for (AgentId e : surviving.members()) {
    if (!is_feasible(system, surviving.without(e))) return false;
  }
  return true;
}

bool is_monopoly_free(const SetSystem& system) {
  return is_monopoly_free(system, AgentSet::all(system.num_agents()));
}

std::vector<AgentSet> minimal_feasible_sets_within(const SetSystem& system,
                                                   const AgentSet& surviving,
                                                   std::size_t cap) {
  check_subset(system, surviving);
  std::vector<AgentSet> out = std::visit(
      [&](const auto& s) -> std::vector<AgentSet> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitFamily>) {
          std::vector<AgentSet> inside;
          for (const auto& f : s.sets) {
            if (f.is_subset_of(surviving)) inside.push_back(f);
          }
          auto minimal = keep_minimal(std::move(inside));
          if (minimal.size() > cap) throw CapExceededError("too many feasible sets", cap);
          return minimal;
        } else if constexpr (std::is_same_v<T, KPathSystem>) {
          std::vector<AgentSet> minimal;
          for (auto& u : enumerate_path_unions(s.graph, surviving, s.k, cap)) {
            bool is_minimal = true;
            for (AgentId e : u.members()) {
              if (max_flow_value(s.graph, u.without(e)) >= s.k) {
                is_minimal = false;
                break;
              }
            }
            if (is_minimal) minimal.push_back(std::move(u));
          }
          return minimal;
        } else if constexpr (std::is_same_v<T, VertexCoverSystem>) {
          std::vector<AgentSet> inside;
          for (auto& c : minimal_covers(s.graph, cap)) {
            if (c.is_subset_of(surviving)) inside.push_back(std::move(c));
          }
          return inside;
        } else {
          return minimal_group_unions(s, surviving, cap);
        }
      },
      system.variant());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AgentSet> minimal_feasible_sets(const SetSystem& system, std::size_t cap) {
  return minimal_feasible_sets_within(system, AgentSet::all(system.num_agents()), cap);
}

SetSystem restrict_system(const SetSystem& system, const AgentSet& surviving,
                          std::size_t cap) {
  if (!is_monopoly_free(system, surviving)) {
    throw MonopolyError("restricted system has a monopoly agent");
  }
  return SetSystem(
      ExplicitFamily{system.num_agents(), minimal_feasible_sets_within(system, surviving, cap)});
}

void check_bids(const SetSystem& system, std::span<const double> bids) {
  if (bids.size() != system.num_agents()) {
    throw ValidationError("bid vector has " + std::to_string(bids.size()) +
                          " entries for " + std::to_string(system.num_agents()) +
                          " agents");
  }
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (!(bids[i] >= 0.0) || !std::isfinite(bids[i])) {
      throw ValidationError("bid of agent " + std::to_string(i) +
                            " must be a finite non-negative number");
    }
  }
}

}  // namespace frugal
