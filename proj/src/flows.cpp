#include "frugal/flows.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "frugal/error.hpp"

namespace frugal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tie_tolerance(double reference) {
  return kCostTolerance * std::max(1.0, std::abs(reference));
}

// Residual-graph helper shared by max flow and successive shortest paths.
// used[e] marks unit flow on edge e.
struct UnitResidual {
  const DiGraph& g;
  const AgentSet& allowed;
  std::vector<char> used;

  UnitResidual(const DiGraph& graph, const AgentSet& allow)
      : g(graph), allowed(allow), used(graph.num_edges(), 0) {}

  // Augments along the parent-edge chain ending at t. parent[v] encodes the
  // edge id and direction: (e << 1) | backward.
  void augment(const std::vector<long>& parent) {
    VertexId v = g.sink();
    while (v != g.source()) {
      const long code = parent[v];
      const EdgeId e = static_cast<EdgeId>(code >> 1);
      if (code & 1) {
        used[e] = 0;
        v = g.arc(e).head;
      } else {
        used[e] = 1;
        v = g.arc(e).tail;
      }
    }
  }

  bool bfs_augment() {
    std::vector<long> parent(g.num_vertices(), -1);
    std::vector<char> seen(g.num_vertices(), 0);
    std::deque<VertexId> queue{g.source()};
    seen[g.source()] = 1;
    while (!queue.empty() && !seen[g.sink()]) {
      const VertexId u = queue.front();
      queue.pop_front();
      for (EdgeId e : g.out_edges(u)) {
        if (!allowed.contains(e) || used[e]) continue;
        const VertexId v = g.arc(e).head;
        if (seen[v]) continue;
        seen[v] = 1;
        parent[v] = static_cast<long>(e) << 1;
        queue.push_back(v);
      }
      for (EdgeId e : g.in_edges(u)) {
        if (!allowed.contains(e) || !used[e]) continue;
        const VertexId v = g.arc(e).tail;
        if (seen[v]) continue;
        seen[v] = 1;
        parent[v] = (static_cast<long>(e) << 1) | 1;
        queue.push_back(v);
      }
    }
    if (!seen[g.sink()]) return false;
    augment(parent);
    return true;
  }

  // Bellman-Ford over the residual graph; returns the augmenting path cost or
  // nullopt when t is unreachable. Edges are relaxed in id order so the result
  // is deterministic.
  std::optional<double> shortest_augment(std::span<const double> costs) {
    const std::size_t n = static_cast<std::size_t>(g.num_vertices());
    std::vector<double> dist(n, kInf);
    std::vector<long> parent(n, -1);
    dist[g.source()] = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const EdgeId e = static_cast<EdgeId>(i);
        if (!allowed.contains(e)) continue;
        const Arc& a = g.arc(e);
        if (!used[e]) {
          if (dist[a.tail] < kInf && dist[a.tail] + costs[e] < dist[a.head] - 1e-12) {
            dist[a.head] = dist[a.tail] + costs[e];
            parent[a.head] = static_cast<long>(e) << 1;
            changed = true;
          }
        } else {
          if (dist[a.head] < kInf && dist[a.head] - costs[e] < dist[a.tail] - 1e-12) {
            dist[a.tail] = dist[a.head] - costs[e];
            parent[a.tail] = (static_cast<long>(e) << 1) | 1;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[g.sink()] == kInf) return std::nullopt;
    augment(parent);
    return dist[g.sink()];
  }

  AgentSet support() const {
    AgentSet s(g.num_edges());
    for (std::size_t e = 0; e < used.size(); ++e) {
      if (used[e]) s.insert(static_cast<EdgeId>(e));
    }
    return s;
  }
};

void check_costs(const DiGraph& g, std::span<const double> costs) {
  if (costs.size() != g.num_edges()) {
    throw ValidationError("cost vector has " + std::to_string(costs.size()) +
                          " entries for " + std::to_string(g.num_edges()) + " edges");
  }
}

std::vector<VertexId> reachable(const DiGraph& g, const AgentSet& sub, VertexId from,
                                bool forward) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    const auto edges = forward ? g.out_edges(u) : g.in_edges(u);
    for (EdgeId e : edges) {
      if (!sub.contains(e)) continue;
      const VertexId v = forward ? g.arc(e).head : g.arc(e).tail;
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

// Kahn's algorithm over the vertices touched by `sub`; nullopt on a cycle.
std::optional<std::vector<VertexId>> topological_order(const DiGraph& g,
                                                       const AgentSet& sub) {
  std::vector<int> indegree(g.num_vertices(), 0);
  std::vector<char> touched(g.num_vertices(), 0);
  for (EdgeId e : sub.members()) {
    ++indegree[g.arc(e).head];
    touched[g.arc(e).head] = touched[g.arc(e).tail] = 1;
  }
  touched[g.source()] = touched[g.sink()] = 1;
  std::deque<VertexId> ready;
  std::size_t expected = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!touched[v]) continue;
    ++expected;
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<VertexId> order;
  while (!ready.empty()) {
    const VertexId u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (EdgeId e : g.out_edges(u)) {
      if (!sub.contains(e)) continue;
      if (--indegree[g.arc(e).head] == 0) ready.push_back(g.arc(e).head);
    }
  }
  if (order.size() != expected) return std::nullopt;
  return order;
}

}  // namespace

int max_flow_value(const DiGraph& g, const AgentSet& allowed) {
  UnitResidual residual(g, allowed);
  int value = 0;
  while (residual.bfs_augment()) ++value;
  return value;
}

int max_flow_value(const DiGraph& g) { return max_flow_value(g, g.all_edges()); }

std::optional<double> min_flow_cost(const DiGraph& g, std::span<const double> costs,
                                    int k, const AgentSet& allowed) {
  check_costs(g, costs);
  UnitResidual residual(g, allowed);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const auto step = residual.shortest_augment(costs);
    if (!step) return std::nullopt;
    total += *step;
  }
  return total;
}

IntegralFlow min_cost_flow(const DiGraph& g, std::span<const double> costs, int k,
                           const AgentSet& allowed) {
  check_costs(g, costs);
  if (k < 0) throw ValidationError("flow size must be non-negative");
  const auto best = min_flow_cost(g, costs, k, allowed);
  if (!best) {
    throw InfeasibleError("no flow of size " + std::to_string(k) +
                          " (max flow " + std::to_string(max_flow_value(g, allowed)) + ")");
  }
  // Drop edges from the highest id down whenever an equally cheap flow
  // survives without them. What remains is used by every optimal flow inside
  // it, so it is exactly the support of the canonical optimum.
  const double tol = tie_tolerance(*best);
  AgentSet current = allowed;
  for (std::size_t i = g.num_edges(); i-- > 0;) {
    const EdgeId e = static_cast<EdgeId>(i);
    if (!current.contains(e)) continue;
    AgentSet trial = current.without(e);
    const auto cost = min_flow_cost(g, costs, k, trial);
    if (cost && std::abs(*cost - *best) <= tol) current = std::move(trial);
  }
  UnitResidual residual(g, current);
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += *residual.shortest_augment(costs);
  return IntegralFlow{residual.support(), k, total};
}

IntegralFlow min_cost_flow(const DiGraph& g, std::span<const double> costs, int k) {
  return min_cost_flow(g, costs, k, g.all_edges());
}

IntegralFlow cheapest_kplus1_subgraph(const DiGraph& g, std::span<const double> bids,
                                      int k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  return min_cost_flow(g, bids, k + 1);
}

FlowCostCurve flow_cost_curve(const DiGraph& g, std::span<const double> costs,
                              const AgentSet& allowed) {
  check_costs(g, costs);
  UnitResidual residual(g, allowed);
  FlowCostCurve curve;
  curve.values.push_back(0.0);
  while (const auto step = residual.shortest_augment(costs)) {
    curve.values.push_back(curve.values.back() + *step);
  }
  return curve;
}

FlowCostCurve flow_cost_curve(const DiGraph& g, std::span<const double> costs) {
  return flow_cost_curve(g, costs, g.all_edges());
}

double longest_path_dag(const DiGraph& g, const AgentSet& subgraph,
                        std::span<const double> costs) {
  check_costs(g, costs);
  const auto order = topological_order(g, subgraph);
  if (!order) throw CycleError("subgraph contains a directed cycle");
  std::vector<double> best(g.num_vertices(), -kInf);
  best[g.source()] = 0.0;
  for (VertexId u : *order) {
    if (best[u] == -kInf) continue;
    for (EdgeId e : g.out_edges(u)) {
      if (!subgraph.contains(e)) continue;
      const VertexId v = g.arc(e).head;
      best[v] = std::max(best[v], best[u] + costs[e]);
    }
  }
  if (best[g.sink()] == -kInf) throw InfeasibleError("subgraph has no s-t path");
  return best[g.sink()];
}

double longest_walk(const DiGraph& g, const AgentSet& subgraph,
                    std::span<const double> costs) {
  check_costs(g, costs);
  std::vector<char> useful(g.num_vertices(), 0);
  {
    const auto from_s = reachable(g, subgraph, g.source(), true);
    const auto to_t = reachable(g, subgraph, g.sink(), false);
    std::vector<char> fwd(g.num_vertices(), 0);
    for (VertexId v : from_s) fwd[v] = 1;
    for (VertexId v : to_t) useful[v] = fwd[v];
  }
  if (!useful[g.sink()]) return -kInf;
  std::vector<double> best(g.num_vertices(), -kInf);
  best[g.source()] = 0.0;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (EdgeId e : subgraph.members()) {
      const Arc& a = g.arc(e);
      if (!useful[a.tail] || !useful[a.head] || best[a.tail] == -kInf) continue;
      if (best[a.tail] + costs[e] > best[a.head] + 1e-12) {
        best[a.head] = best[a.tail] + costs[e];
        changed = true;
      }
    }
    if (!changed) return best[g.sink()];
  }
  return kInf;
}

std::vector<std::vector<EdgeId>> enumerate_st_paths(const DiGraph& g,
                                                    const AgentSet& allowed,
                                                    std::size_t cap) {
  std::vector<std::vector<EdgeId>> paths;
  std::vector<EdgeId> current;
  std::vector<char> on_path(g.num_vertices(), 0);
  auto dfs = [&](auto&& self, VertexId u) -> void {
    if (u == g.sink()) {
      if (paths.size() >= cap) throw CapExceededError("too many s-t paths", cap);
      paths.push_back(current);
      return;
    }
    on_path[u] = 1;
    for (EdgeId e : g.out_edges(u)) {
      if (!allowed.contains(e)) continue;
      const VertexId v = g.arc(e).head;
      if (on_path[v]) continue;
      current.push_back(e);
      self(self, v);
      current.pop_back();
    }
    on_path[u] = 0;
  };
  dfs(dfs, g.source());
  return paths;
}

std::vector<AgentSet> enumerate_path_unions(const DiGraph& g, const AgentSet& allowed,
                                            int count, std::size_t cap) {
  if (count < 1) throw ValidationError("path count must be positive");
  const auto paths = enumerate_st_paths(g, allowed, cap);
  std::set<std::vector<EdgeId>> unions;
  std::vector<char> used(g.num_edges(), 0);
  std::size_t visited = 0;
  const std::size_t visit_cap = cap * 100;
  auto choose = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      std::vector<EdgeId> members;
      for (std::size_t e = 0; e < used.size(); ++e) {
        if (used[e]) members.push_back(static_cast<EdgeId>(e));
      }
      unions.insert(std::move(members));
      if (unions.size() > cap) throw CapExceededError("too many path unions", cap);
      return;
    }
    for (std::size_t i = start; i < paths.size(); ++i) {
      if (++visited > visit_cap) {
        throw CapExceededError("path-union search too large", visit_cap);
      }
      const auto& p = paths[i];
      if (std::any_of(p.begin(), p.end(), [&](EdgeId e) { return used[e] != 0; })) {
        continue;
      }
      for (EdgeId e : p) used[e] = 1;
      self(self, i + 1, remaining - 1);
      for (EdgeId e : p) used[e] = 0;
    }
  };
  choose(choose, 0, count);
  std::vector<AgentSet> out;
  out.reserve(unions.size());
  for (const auto& members : unions) out.emplace_back(g.num_edges(), members);
  return out;
}

double delta_kplus1(const DiGraph& g, std::span<const double> costs, int k,
                    std::size_t cap) {
  check_costs(g, costs);
  if (max_flow_value(g) < k + 1) {
    throw InfeasibleError("network has fewer than " + std::to_string(k + 1) +
                          " edge-disjoint s-t paths");
  }
  double best = kInf;
  for (const auto& unionset : enumerate_path_unions(g, g.all_edges(), k + 1, cap)) {
    best = std::min(best, longest_walk(g, unionset, costs));
  }
  return best;
}

ArticulationDecomposition articulation_decomposition(const DiGraph& g,
                                                     const AgentSet& gstar) {
  std::vector<int> balance(g.num_vertices(), 0);
  for (EdgeId e : gstar.members()) {
    ++balance[g.arc(e).tail];
    --balance[g.arc(e).head];
  }
  const int size = balance[g.source()];
  if (size < 1 || balance[g.sink()] != -size) {
    throw StructureError("edge set is not an s-t flow");
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (v != g.source() && v != g.sink() && balance[v] != 0) {
      throw StructureError("flow conservation fails at vertex " + std::to_string(v));
    }
  }
  const auto order = topological_order(g, gstar);
  if (!order) throw StructureError("flow subgraph contains a cycle");

  ArticulationDecomposition out;
  for (VertexId v : *order) {
    if (v == g.source() || v == g.sink()) continue;
    bool touched = false;
    AgentSet cut = gstar;
    for (EdgeId e : g.out_edges(v)) {
      touched = touched || gstar.contains(e);
      cut.erase(e);
    }
    for (EdgeId e : g.in_edges(v)) {
      touched = touched || gstar.contains(e);
      cut.erase(e);
    }
    if (touched && max_flow_value(g, cut) == 0) out.points.push_back(v);
  }
  out.points.insert(out.points.begin(), g.source());
  out.points.push_back(g.sink());

  // An edge belongs to the part after the last interior point reaching it.
  std::vector<std::size_t> part_of(g.num_vertices(), 0);
  for (std::size_t i = 1; i + 1 < out.points.size(); ++i) {
    for (VertexId v : reachable(g, gstar, out.points[i], true)) part_of[v] = i;
  }
  out.parts.assign(out.points.size() - 1, AgentSet(g.num_edges()));
  for (EdgeId e : gstar.members()) out.parts[part_of[g.arc(e).tail]].insert(e);
  return out;
}

std::vector<std::vector<EdgeId>> decompose_paths(const DiGraph& g,
                                                 const AgentSet& flow) {
  AgentSet remaining = flow;
  std::vector<std::vector<EdgeId>> paths;
  while (true) {
    bool any = false;
    for (EdgeId e : g.out_edges(g.source())) any = any || remaining.contains(e);
    if (!any) break;
    std::vector<EdgeId> path;
    VertexId v = g.source();
    while (v != g.sink()) {
      EdgeId next = -1;
      for (EdgeId e : g.out_edges(v)) {
        if (remaining.contains(e) && (next < 0 || e < next)) next = e;
      }
      if (next < 0) throw StructureError("flow is not decomposable into s-t paths");
      remaining.erase(next);
      path.push_back(next);
      v = g.arc(next).head;
      if (path.size() > g.num_edges()) throw StructureError("flow contains a cycle");
    }
    paths.push_back(std::move(path));
  }
  if (!remaining.empty()) throw StructureError("flow has edges off every s-t path");
  return paths;
}

std::optional<IntegralFlow> verify_shortest_path_flow(const DiGraph& g,
                                                      std::span<const double> weights,
                                                      int k, double tolerance) {
  check_costs(g, weights);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<double> dist(n, kInf);
  dist[g.source()] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      const Arc& a = g.arc(static_cast<EdgeId>(i));
      if (dist[a.tail] + weights[i] < dist[a.head]) {
        dist[a.head] = dist[a.tail] + weights[i];
        changed = true;
      }
    }
    if (!changed) break;
  }
  AgentSet tight(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Arc& a = g.arc(static_cast<EdgeId>(i));
    if (dist[a.tail] < kInf &&
        std::abs(dist[a.tail] + weights[i] - dist[a.head]) <= tolerance) {
      tight.insert(static_cast<EdgeId>(i));
    }
  }
  if (max_flow_value(g, tight) < k + 1) return std::nullopt;
  return min_cost_flow(g, weights, k + 1, tight);
}

}  // namespace frugal
