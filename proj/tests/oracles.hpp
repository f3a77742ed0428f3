#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond its plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "frugal/core.hpp"
#include "frugal/graph.hpp"

namespace oracle {

using frugal::AgentId;
using frugal::AgentSet;

inline AgentSet from_mask(std::size_t n, std::uint64_t mask) {
  AgentSet s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1u) s.insert(static_cast<AgentId>(i));
  }
  return s;
}

// Simple s-t paths inside `allowed`, found by plain DFS over vertices.
inline std::vector<std::uint64_t> st_paths(const frugal::DiGraph& g, std::uint64_t allowed) {
  std::vector<std::uint64_t> out;
  std::vector<char> on_path(g.num_vertices(), 0);
  auto dfs = [&](auto&& self, int v, std::uint64_t used) -> void {
    if (v == g.sink()) {
      out.push_back(used);
      return;
    }
    on_path[v] = 1;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (!(allowed >> e & 1u) || g.arc(static_cast<int>(e)).tail != v) continue;
      const int w = g.arc(static_cast<int>(e)).head;
      if (on_path[w]) continue;
      self(self, w, used | (std::uint64_t{1} << e));
    }
    on_path[v] = 0;
  };
  dfs(dfs, g.source(), 0);
  return out;
}

// True iff `allowed` carries k pairwise edge-disjoint simple s-t paths.
inline bool carries_paths(const frugal::DiGraph& g, std::uint64_t allowed, int k) {
  if (k <= 0) return true;
  const auto paths = st_paths(g, allowed);
  auto pick = [&](auto&& self, std::size_t start, std::uint64_t used, int left) -> bool {
    if (left == 0) return true;
    for (std::size_t i = start; i < paths.size(); ++i) {
      if ((paths[i] & used) == 0 && self(self, i + 1, used | paths[i], left - 1)) return true;
    }
    return false;
  };
  return pick(pick, 0, 0, k);
}

inline bool feasible(const frugal::SetSystem& system, std::uint64_t mask) {
  const std::size_t n = system.num_agents();
  if (const auto* s = system.as<frugal::KPathSystem>()) return carries_paths(s->graph, mask, s->k);
  if (const auto* s = system.as<frugal::VertexCoverSystem>()) {
    for (auto [u, v] : s->graph.edges()) {
      if (!(mask >> u & 1u) && !(mask >> v & 1u)) return false;
    }
    return true;
  }
  if (const auto* s = system.as<frugal::ROutOfKSystem>()) {
    int full = 0;
    for (const auto& grp : s->groups) {
      bool all = true;
      for (AgentId a : grp) all = all && (mask >> a & 1u);
      full += all ? 1 : 0;
    }
    return full >= s->r;
  }
  const auto& f = *system.as<frugal::ExplicitFamily>();
  const AgentSet set = from_mask(n, mask);
  return std::any_of(f.sets.begin(), f.sets.end(),
                     [&](const AgentSet& t) { return t.is_subset_of(set); });
}

// Inclusion-minimal feasible sets by enumerating all 2^n subsets.
inline std::vector<AgentSet> minimal_sets(const frugal::SetSystem& system,
                                          std::uint64_t within = ~std::uint64_t{0}) {
  const std::size_t n = system.num_agents();
  std::vector<std::uint64_t> feas;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if ((m & ~within) == 0 && feasible(system, m)) feas.push_back(m);
  }
  std::vector<AgentSet> out;
  for (std::uint64_t m : feas) {
    bool minimal = true;
    for (std::uint64_t o : feas) {
      if (o != m && (o & m) == o) minimal = false;
    }
    if (minimal) out.push_back(from_mask(n, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t mask_of(const AgentSet& s) {
  std::uint64_t m = 0;
  for (AgentId a : s.members()) m |= std::uint64_t{1} << a;
  return m;
}

inline double mask_cost(std::uint64_t m, const std::vector<double>& c) {
  double t = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (m >> i & 1u) t += c[i];
  }
  return t;
}

// Cheapest edge set carrying k disjoint paths; with non-negative costs this
// is the min-cost k-flow value.
inline std::optional<double> min_flow_cost(const frugal::DiGraph& g,
                                           const std::vector<double>& c, int k) {
  std::optional<double> best;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.num_edges()); ++m) {
    if (!carries_paths(g, m, k)) continue;
    const double t = mask_cost(m, c);
    if (!best || t < *best) best = t;
  }
  return best;
}

inline int max_paths(const frugal::DiGraph& g, std::uint64_t allowed) {
  int k = 0;
  while (carries_paths(g, allowed, k + 1)) ++k;
  return k;
}

// Longest simple s-t path inside `allowed`.
inline double longest_path(const frugal::DiGraph& g, std::uint64_t allowed,
                           const std::vector<double>& c) {
  double best = -std::numeric_limits<double>::infinity();
  for (auto p : st_paths(g, allowed)) best = std::max(best, mask_cost(p, c));
  return best;
}

// Minimum weight vertex cover value by subset enumeration.
inline double min_cover_cost(const frugal::UndirectedGraph& g, const std::vector<double>& w) {
  double best = std::numeric_limits<double>::infinity();
  const int n = g.num_vertices();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (auto [u, v] : g.edges()) ok = ok && ((m >> u & 1u) || (m >> v & 1u));
    if (ok) best = std::min(best, mask_cost(m, w));
  }
  return best;
}

// Largest eigenvalue of a symmetric 0/1 matrix.
inline double top_eigenvalue(const std::vector<std::vector<char>>& adj) {
  const auto n = static_cast<Eigen::Index>(adj.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = adj[i][j] ? 1.0 : 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return es.eigenvalues().maxCoeff();
}

struct Benchmarks {
  double nu = std::numeric_limits<double>::quiet_NaN();
  double mu = std::numeric_limits<double>::quiet_NaN();
};

// nu and mu over the reference set `ref` by enumerating the vertices of the
// polytope {b >= c on ref, b(ref \ T) <= c(T \ ref) for every minimal T}.
// nu keeps only vertices where every member has a tight set avoiding it.
inline Benchmarks benchmarks(const frugal::SetSystem& system, const std::vector<double>& c,
                             const AgentSet& ref) {
  const auto sets = minimal_sets(system);
  const auto members = ref.members();
  const auto s = static_cast<Eigen::Index>(members.size());
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  std::vector<int> set_of_row;
  for (Eigen::Index i = 0; i < s; ++i) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(s);
    r(i) = -1.0;
    rows.push_back(r);
    rhs.push_back(-c[members[i]]);
    set_of_row.push_back(-1);
  }
  for (std::size_t t = 0; t < sets.size(); ++t) {
    if (sets[t] == ref) continue;
    Eigen::VectorXd r = Eigen::VectorXd::Zero(s);
    for (Eigen::Index i = 0; i < s; ++i) {
      if (!sets[t].contains(members[i])) r(i) = 1.0;
    }
    rows.push_back(r);
    rhs.push_back(sets[t].minus(ref).total(c));
    set_of_row.push_back(static_cast<int>(t));
  }
  Benchmarks out;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick;
  auto visit = [&]() {
    Eigen::MatrixXd a(s, s);
    Eigen::VectorXd b(s);
    for (Eigen::Index i = 0; i < s; ++i) {
      a.row(i) = rows[pick[i]].transpose();
      b(i) = rhs[pick[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < s) return;
    const Eigen::VectorXd x = lu.solve(b);
    for (std::size_t j = 0; j < m; ++j) {
      if (rows[j].dot(x) > rhs[j] + 1e-9) return;
    }
    const double value = x.sum();
    if (std::isnan(out.mu) || value > out.mu) out.mu = value;
    for (Eigen::Index i = 0; i < s; ++i) {
      bool tight = false;
      for (std::size_t j = 0; j < m && !tight; ++j) {
        tight = set_of_row[j] >= 0 && rows[j](i) == 1.0 &&
                std::abs(rows[j].dot(x) - rhs[j]) <= 1e-9;
      }
      if (!tight) return;
    }
    if (std::isnan(out.nu) || value < out.nu) out.nu = value;
  };
  auto choose = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<Eigen::Index>(pick.size()) == s) {
      visit();
      return;
    }
    for (std::size_t j = start; j < m; ++j) {
      pick.push_back(j);
      self(self, j + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);
  return out;
}

// The cheapest minimal feasible set, ties broken by lexicographic order.
inline AgentSet cheapest_set(const frugal::SetSystem& system, const std::vector<double>& c) {
  const auto sets = minimal_sets(system);
  AgentSet best = sets.front();
  for (const auto& t : sets) {
    if (t.total(c) < best.total(c) - 1e-12) best = t;
  }
  return best;
}

}  // namespace oracle
