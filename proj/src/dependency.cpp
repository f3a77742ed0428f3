#include "frugal/dependency.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "frugal/error.hpp"

namespace frugal {
namespace {

template <class Adjacent>
DependencyGraph assemble(const AgentSet& surviving, Adjacent&& adjacent) {
  DependencyGraph h;
  h.nodes = surviving.members();
  const std::size_t n = h.nodes.size();
  h.adjacency.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacent(h.nodes[i], h.nodes[j])) h.adjacency[i][j] = h.adjacency[j][i] = 1;
    }
  }
  h.components = components(h);
  return h;
}

}  // namespace

std::size_t DependencyGraph::index_of(AgentId a) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), a);
  if (it == nodes.end() || *it != a) {
    throw std::out_of_range("agent " + std::to_string(a) + " is not a dependency node");
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

bool DependencyGraph::adjacent(AgentId a, AgentId b) const {
  return adjacency[index_of(a)][index_of(b)] != 0;
}

std::size_t DependencyGraph::num_edges() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    for (std::size_t j = i + 1; j < adjacency.size(); ++j) count += adjacency[i][j];
  }
  return count;
}

DependencyGraph build_dependency(const SetSystem& system, const AgentSet& surviving) {
  if (!is_monopoly_free(system, surviving)) {
    throw MonopolyError("surviving agents do not form a monopoly-free system");
  }
  return assemble(surviving, [&](AgentId a, AgentId b) {
    AgentSet rest = surviving.without(a);
    rest.erase(b);
    return !is_feasible(system, rest);
  });
}

DependencyGraph build_dependency_from_sets(const std::vector<AgentSet>& minimal_sets,
                                           const AgentSet& surviving) {
  std::vector<const AgentSet*> inside;
  for (const auto& s : minimal_sets) {
    if (s.is_subset_of(surviving)) inside.push_back(&s);
  }
  if (inside.empty()) throw MonopolyError("no feasible set survives");
  for (AgentId a : surviving.members()) {
    if (std::all_of(inside.begin(), inside.end(),
                    [&](const AgentSet* s) { return s->contains(a); })) {
      throw MonopolyError("agent " + std::to_string(a) + " is in every feasible set");
    }
  }
  return assemble(surviving, [&](AgentId a, AgentId b) {
    return std::all_of(inside.begin(), inside.end(), [&](const AgentSet* s) {
      return s->contains(a) || s->contains(b);
    });
  });
}

std::vector<std::vector<AgentId>> components(const DependencyGraph& h) {
  const std::size_t n = h.nodes.size();
  std::vector<int> label(n, -1);
  std::vector<std::vector<AgentId>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      out.back().push_back(h.nodes[u]);
      for (std::size_t v = 0; v < n; ++v) {
        if (h.adjacency[u][v] && label[v] < 0) {
          label[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  // Nodes are visited in id order, so components already come out sorted by
  // their smallest member.
  return out;
}

}  // namespace frugal
