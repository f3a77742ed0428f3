#include "frugal/generate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "frugal/error.hpp"

namespace frugal {
namespace {

class Params {
 public:
  explicit Params(const GeneratorParams& raw) : raw_(raw) {}

  long integer(const std::string& name, long fallback, long lo, long hi) {
    used_.insert(name);
    const auto it = raw_.find(name);
    if (it == raw_.end()) return fallback;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != it->second.size()) {
      throw ValidationError("parameter '" + name + "' must be an integer");
    }
    if (v < lo || v > hi) {
      throw ValidationError("parameter '" + name + "' must lie in [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  double real(const std::string& name, double fallback, double lo, double hi) {
    used_.insert(name);
    const auto it = raw_.find(name);
    if (it == raw_.end()) return fallback;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != it->second.size() || v < lo || v > hi) {
      throw ValidationError("parameter '" + name + "' must be a number in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  std::vector<long> list(const std::string& name, std::vector<long> fallback, long lo,
                         long hi) {
    used_.insert(name);
    const auto it = raw_.find(name);
    if (it == raw_.end()) return fallback;
    std::vector<long> out;
    std::stringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
      GeneratorParams one{{name, item}};
      out.push_back(Params(one).integer(name, 0, lo, hi));
    }
    if (out.empty()) throw ValidationError("parameter '" + name + "' is empty");
    return out;
  }

  // Rejects parameters the generator does not understand.
  void finish(const std::string& kind) const {
    for (const auto& [name, value] : raw_) {
      if (!used_.count(name)) {
        throw ValidationError("generator '" + kind + "' has no parameter '" + name + "'");
      }
    }
  }

 private:
  const GeneratorParams& raw_;
  std::set<std::string> used_;
};

std::vector<double> random_costs(SplitMix64& rng, std::size_t n, long max_cost) {
  std::vector<double> costs(n);
  for (auto& c : costs) c = static_cast<double>(rng.between(0, max_cost));
  return costs;
}

Instance layered_dag(Params& p, SplitMix64& rng) {
  const int k = static_cast<int>(p.integer("k", 1, 1, 8));
  const int layers = static_cast<int>(p.integer("layers", 2, 1, 10));
  const int width = static_cast<int>(p.integer("width", k + 2, k + 1, 12));
  const double density = p.real("density", 0.4, 0.0, 1.0);
  const long max_cost = p.integer("max-cost", 9, 0, 1000000);

  // Vertex 0 is s, then layer by layer, last vertex is t.
  const VertexId n = 2 + layers * width;
  const VertexId s = 0;
  const VertexId t = n - 1;
  auto at = [&](int layer, int slot) { return 1 + layer * width + slot; };
  std::set<std::pair<VertexId, VertexId>> edges;
  // k + 1 straight spines make the max flow at least k + 1.
  for (int i = 0; i <= k; ++i) {
    edges.insert({s, at(0, i)});
    for (int l = 0; l + 1 < layers; ++l) edges.insert({at(l, i), at(l + 1, i)});
    edges.insert({at(layers - 1, i), t});
  }
  for (int a = 0; a < width; ++a) {
    if (rng.chance(density)) edges.insert({s, at(0, a)});
    if (rng.chance(density)) edges.insert({at(layers - 1, a), t});
  }
  for (int l = 0; l + 1 < layers; ++l) {
    for (int a = 0; a < width; ++a) {
      for (int b = 0; b < width; ++b) {
        if (rng.chance(density)) edges.insert({at(l, a), at(l + 1, b)});
      }
    }
  }
  std::vector<Arc> arcs;
  for (auto [u, v] : edges) arcs.push_back({u, v});
  auto costs = random_costs(rng, arcs.size(), max_cost);
  DiGraph g(n, s, t, std::move(arcs));
  return Instance{SetSystem(KPathSystem{std::move(g), k}), std::move(costs), std::nullopt};
}

Instance parallel_paths(Params& p) {
  const auto lengths = p.list("lengths", {1, 4}, 1, 1000);
  const int k = static_cast<int>(p.integer("k", 1, 1, 64));
  if (lengths.size() < static_cast<std::size_t>(k) + 1) {
    throw ValidationError("parallel-paths needs at least k+1 paths");
  }
  const double first_cost = p.real("first-cost", 1.0, 0.0, 1e9);
  VertexId next = 2;
  std::vector<Arc> arcs;
  std::vector<double> costs;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    VertexId prev = 0;
    for (long j = 0; j < lengths[i]; ++j) {
      const VertexId head = j + 1 == lengths[i] ? 1 : next++;
      arcs.push_back({prev, head});
      costs.push_back(i == 0 ? first_cost : 0.0);
      prev = head;
    }
  }
  DiGraph g(next, 0, 1, std::move(arcs));
  return Instance{SetSystem(KPathSystem{std::move(g), k}), std::move(costs), std::nullopt};
}

Instance gnp_cover(Params& p, SplitMix64& rng) {
  const VertexId n = static_cast<VertexId>(p.integer("n", 6, 2, 30));
  const double density = p.real("p", 0.5, 0.0, 1.0);
  const long max_cost = p.integer("max-cost", 9, 0, 1000000);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.chance(density)) edges.emplace_back(u, v);
    }
  }
  if (edges.empty()) edges.emplace_back(0, 1);
  auto costs = random_costs(rng, static_cast<std::size_t>(n), max_cost);
  return Instance{SetSystem(VertexCoverSystem{UndirectedGraph(n, std::move(edges))}),
                  std::move(costs), std::nullopt};
}

Instance star(Params& p) {
  const VertexId m = static_cast<VertexId>(p.integer("m", 4, 1, 1000));
  const double center = p.real("center-cost", 1.0, 0.0, 1e9);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId leaf = 1; leaf <= m; ++leaf) edges.emplace_back(0, leaf);
  std::vector<double> costs(static_cast<std::size_t>(m) + 1, 0.0);
  costs[0] = center;
  return Instance{SetSystem(VertexCoverSystem{UndirectedGraph(m + 1, std::move(edges))}),
                  std::move(costs), std::nullopt};
}

Instance multipartite(const std::vector<long>& sizes, Params& p, SplitMix64& rng) {
  const long max_cost = p.integer("max-cost", 9, 0, 1000000);
  std::vector<int> part;
  for (std::size_t i = 0; i < sizes.size(); ++i) part.insert(part.end(), sizes[i], static_cast<int>(i));
  const auto n = static_cast<VertexId>(part.size());
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (part[u] != part[v]) edges.emplace_back(u, v);
    }
  }
  if (edges.empty()) throw ValidationError("multipartite graph needs two non-empty parts");
  auto costs = random_costs(rng, part.size(), max_cost);
  return Instance{SetSystem(VertexCoverSystem{UndirectedGraph(n, std::move(edges))}),
                  std::move(costs), std::nullopt};
}

Instance r_out_of_k(Params& p, SplitMix64& rng) {
  const auto sizes = p.list("sizes", {1, 2, 1}, 1, 100);
  const int r = static_cast<int>(p.integer("r", 1, 1, 100));
  const long max_cost = p.integer("max-cost", 9, 0, 1000000);
  if (sizes.size() < static_cast<std::size_t>(r) + 1) {
    throw ValidationError("r-out-of-k needs at least r+1 groups");
  }
  std::vector<std::vector<AgentId>> groups;
  AgentId next = 0;
  for (long size : sizes) {
    groups.emplace_back();
    for (long j = 0; j < size; ++j) groups.back().push_back(next++);
  }
  auto costs = random_costs(rng, static_cast<std::size_t>(next), max_cost);
  return Instance{SetSystem(ROutOfKSystem{static_cast<std::size_t>(next), std::move(groups), r}),
                  std::move(costs), std::nullopt};
}

}  // namespace

const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds = {
      "layered-dag", "parallel-paths", "random-gnp-cover", "star",
      "clique",      "multipartite",   "r-out-of-k"};
  return kinds;
}

std::uint64_t sweep_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return mix.next();
}

Instance generate(const std::string& kind, const GeneratorParams& params,
                  std::uint64_t seed) {
  SplitMix64 rng(seed);
  Params p(params);
  Instance out = [&]() -> Instance {
    if (kind == "layered-dag") return layered_dag(p, rng);
    if (kind == "parallel-paths") return parallel_paths(p);
    if (kind == "random-gnp-cover") return gnp_cover(p, rng);
    if (kind == "star") return star(p);
    if (kind == "clique") {
      const long n = p.integer("n", 4, 2, 30);
      return multipartite(std::vector<long>(static_cast<std::size_t>(n), 1), p, rng);
    }
    if (kind == "multipartite") return multipartite(p.list("sizes", {2, 3}, 1, 30), p, rng);
    if (kind == "r-out-of-k") return r_out_of_k(p, rng);
    throw ValidationError("unknown generator kind '" + kind + "'");
  }();
  p.finish(kind);
  out.provenance = Provenance{kind, seed, params};
  return out;
}

}  // namespace frugal
