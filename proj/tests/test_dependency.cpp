#include <doctest.h>

#include "common.hpp"
#include "frugal/dependency.hpp"
#include "frugal/error.hpp"
#include "frugal/flows.hpp"
#include "oracles.hpp"

using namespace frugal;

TEST_CASE("diamond dependency graph is a 4-cycle") {
  const auto sys = fixture::kpath(fixture::diamond());
  const auto h = build_dependency(sys, AgentSet::all(4));
  CHECK(h.num_edges() == 4);
  CHECK(h.adjacent(0, 1));
  CHECK(h.adjacent(0, 3));
  CHECK_FALSE(h.adjacent(0, 2));
  CHECK_FALSE(h.adjacent(1, 3));
  CHECK(h.components.size() == 1);
}

TEST_CASE("two disjoint paths give a complete bipartite graph") {
  const auto sys = fixture::kpath(fixture::para(3));
  const auto h = build_dependency(sys, AgentSet::all(4));
  CHECK(h.num_edges() == 3);
  for (AgentId e = 1; e <= 3; ++e) CHECK(h.adjacent(0, e));
  CHECK_FALSE(h.adjacent(1, 2));
}

TEST_CASE("series composition splits into components") {
  const auto sys = fixture::kpath(fixture::two_diamonds());
  const auto h = build_dependency(sys, AgentSet::all(8));
  REQUIRE(h.components.size() == 2);
  CHECK(h.components[0] == std::vector<AgentId>{0, 1, 2, 3});
  CHECK(h.components[1] == std::vector<AgentId>{4, 5, 6, 7});
}

TEST_CASE("r-out-of-k gives a complete multipartite graph") {
  const SetSystem sys(fixture::groups({1, 2, 2}, 2));
  const auto h = build_dependency(sys, AgentSet::all(5));
  CHECK(h.num_edges() == 2 + 2 + 4);
  CHECK_FALSE(h.adjacent(1, 2));
  CHECK(h.adjacent(1, 3));
}

TEST_CASE("vertex cover dependency graph is the graph itself") {
  const auto g = fixture::triangle();
  const auto h = build_dependency(fixture::cover(g), AgentSet::all(3));
  CHECK(h.num_edges() == 3);
  const auto s = build_dependency(fixture::cover(fixture::star(4)), AgentSet::all(5));
  CHECK(s.num_edges() == 4);
  CHECK_FALSE(s.adjacent(1, 2));
}

TEST_CASE("monopolies are rejected") {
  const auto sys = fixture::kpath(fixture::diamond());
  CHECK_THROWS_AS(build_dependency(sys, AgentSet(4, {0, 2})), MonopolyError);
}

TEST_CASE("edgeless graph has singleton components") {
  DependencyGraph h;
  h.nodes = {2, 5, 7};
  h.adjacency.assign(3, std::vector<char>(3, 0));
  const auto c = components(h);
  REQUIRE(c.size() == 3);
  CHECK(c[1] == std::vector<AgentId>{5});
}

TEST_CASE("both construction routes agree on random pruned networks") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int k = 1 + static_cast<int>(seed % 2);
    const auto inst = generate("layered-dag", {{"k", std::to_string(k)}, {"width", "3"}}, seed);
    const auto& g = inst.system.as<KPathSystem>()->graph;
    const auto gstar = cheapest_kplus1_subgraph(g, inst.costs, k).edges;
    const auto a = build_dependency(inst.system, gstar);
    const auto b = build_dependency_from_sets(minimal_feasible_sets_within(inst.system, gstar),
                                              gstar);
    CHECK(a.adjacency == b.adjacency);
    CHECK(a.components == b.components);
    if (g.num_edges() <= 16) {
      const auto c = build_dependency_from_sets(
          oracle::minimal_sets(inst.system, oracle::mask_of(gstar)), gstar);
      CHECK(a.adjacency == c.adjacency);
    }
  }
}
