#pragma once

#include <span>
#include <utility>
#include <vector>

#include "frugal/agent_set.hpp"

namespace frugal {

using VertexId = std::int32_t;
using EdgeId = AgentId;

struct Arc {
  VertexId tail;
  VertexId head;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Directed s-t network with unit capacity on every edge. Edge ids are dense
// 0..m-1 and double as agent ids in path systems.
class DiGraph {
 public:
  DiGraph(VertexId num_vertices, VertexId source, VertexId sink,
          std::vector<Arc> arcs);

  VertexId num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return arcs_.size(); }
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }
  const Arc& arc(EdgeId e) const { return arcs_[e]; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }

  AgentSet all_edges() const { return AgentSet::all(arcs_.size()); }

 private:
  VertexId num_vertices_;
  VertexId source_;
  VertexId sink_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// Simple undirected graph; vertices double as agents in vertex cover systems.
class UndirectedGraph {
 public:
  UndirectedGraph(VertexId num_vertices,
                  std::vector<std::pair<VertexId, VertexId>> edges);

  VertexId num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const std::pair<VertexId, VertexId>> edges() const { return edges_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
  bool adjacent(VertexId u, VertexId v) const;
  std::size_t degree(VertexId v) const { return adj_[v].size(); }

 private:
  VertexId num_vertices_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<VertexId>> adj_;
};

}  // namespace frugal
