#pragma once

#include <string>
#include <vector>

#include "frugal/core.hpp"
#include "frugal/generate.hpp"
#include "frugal/io.hpp"

namespace fixture {

// s=0, a=1, b=2, t=3; edges s->a, s->b, a->t, b->t.
inline frugal::DiGraph diamond() { return frugal::DiGraph(4, 0, 3, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

// Edge 0 is the one-edge path P1; edges 1..n form the path P2.
inline frugal::DiGraph para(int n) {
  std::vector<frugal::Arc> arcs{{0, 1}};
  int prev = 0;
  for (int i = 0; i < n; ++i) {
    const int head = i + 1 == n ? 1 : i + 2;
    arcs.push_back({prev, head});
    prev = head;
  }
  return frugal::DiGraph(n + 1, 0, 1, arcs);
}

inline std::vector<double> para_costs(int n) {
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  return c;
}

inline frugal::DiGraph parallel_edges(int m) {
  return frugal::DiGraph(2, 0, 1, std::vector<frugal::Arc>(m, frugal::Arc{0, 1}));
}

// Two diamonds sharing the middle vertex 3.
inline frugal::DiGraph two_diamonds() {
  return frugal::DiGraph(7, 0, 6,
                         {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}});
}

inline frugal::UndirectedGraph star(int m) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= m; ++i) edges.push_back({0, i});
  return frugal::UndirectedGraph(m + 1, edges);
}

inline std::vector<double> star_costs(int m) {
  std::vector<double> c(m + 1, 0.0);
  c[0] = 1.0;
  return c;
}

inline frugal::UndirectedGraph triangle() {
  return frugal::UndirectedGraph(3, {{0, 1}, {1, 2}, {0, 2}});
}

inline frugal::SetSystem kpath(frugal::DiGraph g, int k = 1) {
  return frugal::SetSystem(frugal::KPathSystem{std::move(g), k});
}

inline frugal::SetSystem cover(frugal::UndirectedGraph g) {
  return frugal::SetSystem(frugal::VertexCoverSystem{std::move(g)});
}

// Consecutive groups of the given sizes.
inline frugal::ROutOfKSystem groups(const std::vector<int>& sizes, int r) {
  frugal::ROutOfKSystem s;
  s.r = r;
  frugal::AgentId next = 0;
  for (int size : sizes) {
    std::vector<frugal::AgentId> g;
    for (int i = 0; i < size; ++i) g.push_back(next++);
    s.groups.push_back(g);
  }
  s.num_agents = static_cast<std::size_t>(next);
  return s;
}

inline std::string path(const std::string& name) {
  return std::string(FRUGAL_FIXTURE_DIR) + "/" + name;
}

}  // namespace fixture
