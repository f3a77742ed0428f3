#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frugal/error.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {
namespace {

enum : signed char { kUndecided = -1, kOut = 0, kIn = 1 };

class CoverSearch {
 public:
  CoverSearch(const UndirectedGraph& g, std::span<const double> w, const AgentSet& allowed)
      : g_(g), w_(w), allowed_(allowed), state_(g.num_vertices(), kUndecided) {}

  std::optional<AgentSet> run() {
    descend(g_.num_vertices() - 1, 0.0);
    if (!found_) return std::nullopt;
    return best_set_;
  }

 private:
  // Vertices are decided from the highest id down, excluding before
  // including, and a cover replaces the incumbent only if strictly cheaper.
  // The first optimal cover reached is therefore the canonical one.
  void descend(VertexId v, double cost) {
    if (found_ && cost + lower_bound(v) >= best_ - tolerance()) return;
    if (v < 0) {
      if (!found_ || cost < best_ - tolerance()) {
        found_ = true;
        best_ = cost;
        best_set_ = AgentSet(static_cast<std::size_t>(g_.num_vertices()));
        for (VertexId u = 0; u < g_.num_vertices(); ++u) {
          if (state_[u] == kIn) best_set_.insert(u);
        }
      }
      return;
    }
    bool forced_in = false;
    bool neighbours_allowed = true;
    for (VertexId u : g_.neighbors(v)) {
      if (state_[u] == kOut) forced_in = true;
      if (!allowed_.contains(u)) neighbours_allowed = false;
    }
    if (!forced_in && neighbours_allowed) {
      state_[v] = kOut;
      descend(v - 1, cost);
    }
    if (allowed_.contains(v)) {
      state_[v] = kIn;
      descend(v - 1, cost + w_[v]);
    }
    state_[v] = kUndecided;
  }

  // Undecided vertices 0..v: those with an excluded neighbour must join; the
  // rest need one endpoint of each edge of a greedy matching.
  double lower_bound(VertexId v) const {
    double bound = 0.0;
    std::vector<char> forced(static_cast<std::size_t>(v + 1), 0);
    for (VertexId u = 0; u <= v; ++u) {
      for (VertexId x : g_.neighbors(u)) {
        if (state_[x] == kOut) {
          forced[u] = 1;
          bound += w_[u];
          break;
        }
      }
    }
    std::vector<char> matched(static_cast<std::size_t>(v + 1), 0);
    for (auto [a, b] : g_.edges()) {
      if (a > v || b > v || forced[a] || forced[b] || matched[a] || matched[b]) continue;
      matched[a] = matched[b] = 1;
      bound += std::min(w_[a], w_[b]);
    }
    return bound;
  }

  double tolerance() const { return kCostTolerance * std::max(1.0, std::abs(best_)); }

  const UndirectedGraph& g_;
  std::span<const double> w_;
  const AgentSet& allowed_;
  std::vector<signed char> state_;
  bool found_ = false;
  double best_ = std::numeric_limits<double>::infinity();
  AgentSet best_set_;
};

void check_weights(const UndirectedGraph& g, std::span<const double> w) {
  if (w.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw ValidationError("weight vector length differs from vertex count");
  }
}

}  // namespace

std::optional<AgentSet> min_weight_cover(const UndirectedGraph& g,
                                         std::span<const double> weights,
                                         const AgentSet& allowed) {
  check_weights(g, weights);
  if (g.num_vertices() > kExactCoverMaxVertices) {
    throw SizeError("exact vertex cover is limited to " +
                    std::to_string(kExactCoverMaxVertices) + " vertices");
  }
  return CoverSearch(g, weights, allowed).run();
}

AgentSet local_ratio_cover(const UndirectedGraph& g, std::span<const double> weights) {
  check_weights(g, weights);
  std::vector<double> residual(weights.begin(), weights.end());
  for (auto [u, v] : g.edges()) {
    const double d = std::min(residual[u], residual[v]);
    residual[u] -= d;
    residual[v] -= d;
  }
  AgentSet cover(static_cast<std::size_t>(g.num_vertices()));
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) > 0 && residual[v] <= kCostTolerance) cover.insert(v);
  }
  return cover;
}

AgentSet local_optimality_repair(const UndirectedGraph& g,
                                 std::span<const double> scaled_bids, AgentSet cover) {
  check_weights(g, scaled_bids);
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (!cover.contains(v)) continue;
      double outside = 0.0;
      for (VertexId u : g.neighbors(v)) {
        if (!cover.contains(u)) outside += scaled_bids[u];
      }
      if (scaled_bids[v] > outside + kCostTolerance) {
        cover.erase(v);
        for (VertexId u : g.neighbors(v)) cover.insert(u);
        changed = true;
      }
    }
  }
  return cover;
}

bool is_locally_optimal(const UndirectedGraph& g, std::span<const double> scaled_bids,
                        const AgentSet& cover, double tolerance) {
  for (VertexId v : cover.members()) {
    double outside = 0.0;
    for (VertexId u : g.neighbors(v)) {
      if (!cover.contains(u)) outside += scaled_bids[u];
    }
    if (scaled_bids[v] > outside + tolerance) return false;
  }
  return true;
}

MechanismOutcome vertex_cover_mechanism(const UndirectedGraph& g,
                                        std::span<const double> bids, CoverMode mode) {
  if (g.num_edges() == 0) throw ValidationError("vertex cover auction needs an edge");
  if (mode == CoverMode::Exact && g.num_vertices() > kExactCoverMaxVertices) {
    throw SizeError("exact vertex cover is limited to " +
                    std::to_string(kExactCoverMaxVertices) + " vertices");
  }
  const SetSystem system(VertexCoverSystem{g});
  Pruner pruner;
  pruner.prune = [&](std::span<const double>) {
    return AgentSet::all(static_cast<std::size_t>(g.num_vertices()));
  };
  pruner.threshold = [](std::span<const double>, AgentId) { return Threshold::infinite(); };
  Selector selector;
  if (mode == CoverMode::Exact) {
    selector.select = [&](const AgentSet& within, std::span<const double> scaled) {
      auto cover = min_weight_cover(g, scaled, within);
      if (!cover) throw StructureError("no vertex cover inside the surviving set");
      return *cover;
    };
    selector.optimum = [&](const AgentSet& within,
                           std::span<const double> scaled) -> std::optional<double> {
      auto cover = min_weight_cover(g, scaled, within);
      if (!cover) return std::nullopt;
      return cover->total(scaled);
    };
  } else {
    selector.select = [&](const AgentSet&, std::span<const double> scaled) {
      return local_optimality_repair(g, scaled, local_ratio_cover(g, scaled));
    };
  }
  return run_pruning_lifting(system, bids, pruner, selector, {},
                             mode == CoverMode::Exact ? "vertex-cover"
                                                      : "vertex-cover-approx");
}

}  // namespace frugal
