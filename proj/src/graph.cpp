#include "frugal/graph.hpp"

#include <algorithm>
#include <string>

#include "frugal/error.hpp"

namespace frugal {

DiGraph::DiGraph(VertexId num_vertices, VertexId source, VertexId sink,
                 std::vector<Arc> arcs)
    : num_vertices_(num_vertices),
      source_(source),
      sink_(sink),
      arcs_(std::move(arcs)),
      out_(num_vertices > 0 ? num_vertices : 0),
      in_(num_vertices > 0 ? num_vertices : 0) {
  if (num_vertices < 2) throw ValidationError("network needs at least 2 vertices");
  auto valid = [&](VertexId v) { return v >= 0 && v < num_vertices; };
  if (!valid(source) || !valid(sink)) {
    throw ValidationError("source/sink outside vertex range");
  }
  if (source == sink) throw ValidationError("source equals sink");
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    const Arc& a = arcs_[e];
    if (!valid(a.tail) || !valid(a.head)) {
      throw ValidationError("edge " + std::to_string(e) +
                            " references a vertex outside 0.." +
                            std::to_string(num_vertices - 1));
    }
    if (a.tail == a.head) {
      throw ValidationError("edge " + std::to_string(e) + " is a self-loop");
    }
    out_[a.tail].push_back(static_cast<EdgeId>(e));
    in_[a.head].push_back(static_cast<EdgeId>(e));
  }
}

UndirectedGraph::UndirectedGraph(
    VertexId num_vertices, std::vector<std::pair<VertexId, VertexId>> edges)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      adj_(num_vertices > 0 ? num_vertices : 0) {
  if (num_vertices < 1) throw ValidationError("graph needs at least 1 vertex");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw ValidationError("edge " + std::to_string(i) +
                            " references a vertex outside 0.." +
                            std::to_string(num_vertices - 1));
    }
    if (u == v) throw ValidationError("edge " + std::to_string(i) + " is a self-loop");
    if (adjacent(u, v)) {
      throw ValidationError("edge " + std::to_string(i) + " duplicates an earlier edge");
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool UndirectedGraph::adjacent(VertexId u, VertexId v) const {
  const auto& list = adj_[u];
  return std::find(list.begin(), list.end(), v) != list.end();
}

}  // namespace frugal
