#include <doctest.h>

#include "common.hpp"
#include "frugal/core.hpp"
#include "frugal/error.hpp"
#include "oracles.hpp"

using namespace frugal;

TEST_CASE("agent sets") {
  AgentSet a(6, {1, 3, 5});
  AgentSet b(6, {3, 4});
  CHECK(a.size() == 3);
  CHECK(a.intersects(b));
  CHECK(a.unite(b).members() == std::vector<AgentId>{1, 3, 4, 5});
  CHECK(a.minus(b).members() == std::vector<AgentId>{1, 5});
  CHECK(a.complement().members() == std::vector<AgentId>{0, 2, 4});
  CHECK(AgentSet(6, {3}).is_subset_of(b));
  CHECK(a.total(std::vector<double>{0, 1, 0, 2, 0, 4}) == 7.0);
}

TEST_CASE("canonical order compares the largest differing id") {
  // {0,3} vs {1,2}: largest id in the difference is 3, so {1,2} is smaller.
  CHECK(canonical_less(AgentSet(4, {1, 2}), AgentSet(4, {0, 3})));
  CHECK_FALSE(canonical_less(AgentSet(4, {0, 3}), AgentSet(4, {1, 2})));
  CHECK_FALSE(canonical_less(AgentSet(4, {1}), AgentSet(4, {1})));
  CHECK(canonical_less(AgentSet(4, {1}), AgentSet(4, {1, 2})));
}

TEST_CASE("feasibility per kind") {
  const auto d = fixture::kpath(fixture::diamond());
  CHECK(is_feasible(d, AgentSet(4, {0, 2})));
  CHECK_FALSE(is_feasible(d, AgentSet(4, {0, 3})));
  CHECK_FALSE(is_feasible(d, AgentSet(4)));

  const SetSystem rk(fixture::groups({1, 1, 1}, 2));
  CHECK(is_feasible(rk, AgentSet(3, {0, 1})));
  CHECK_FALSE(is_feasible(rk, AgentSet(3, {2})));

  const auto edge = fixture::cover(UndirectedGraph(2, {{0, 1}}));
  CHECK(is_feasible(edge, AgentSet(2, {0})));
  CHECK_FALSE(is_feasible(edge, AgentSet(2)));
}

TEST_CASE("monopoly freeness") {
  const auto d = fixture::kpath(fixture::diamond());
  CHECK(is_monopoly_free(d));
  CHECK_FALSE(is_monopoly_free(d, AgentSet(4, {0, 2})));
  CHECK(is_monopoly_free(fixture::cover(UndirectedGraph(2, {{0, 1}}))));
  const auto path = fixture::kpath(DiGraph(3, 0, 2, {{0, 1}, {1, 2}}));
  CHECK_FALSE(is_monopoly_free(path));
}

TEST_CASE("minimal feasible sets") {
  const auto d = fixture::kpath(fixture::diamond());
  const auto sets = minimal_feasible_sets(d);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].members() == std::vector<AgentId>{0, 2});
  CHECK(sets[1].members() == std::vector<AgentId>{1, 3});

  const auto st = minimal_feasible_sets(fixture::cover(fixture::star(3)));
  REQUIRE(st.size() == 2);
  CHECK(st[0].members() == std::vector<AgentId>{0});
  CHECK(st[1].members() == std::vector<AgentId>{1, 2, 3});

  const auto rk = minimal_feasible_sets(SetSystem(fixture::groups({1, 2, 1}, 2)));
  REQUIRE(rk.size() == 3);
  CHECK(rk[0].members() == std::vector<AgentId>{0, 1, 2});
  CHECK(rk[1].members() == std::vector<AgentId>{0, 3});
  CHECK(rk[2].members() == std::vector<AgentId>{1, 2, 3});
}

TEST_CASE("minimal sets agree with subset enumeration") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto dag = generate("layered-dag", {{"k", "1"}, {"width", "3"}}, seed);
    if (dag.system.num_agents() <= 14) {
      CHECK(minimal_feasible_sets(dag.system) == oracle::minimal_sets(dag.system));
    }
    const auto g = generate("random-gnp-cover", {{"n", "7"}}, seed);
    CHECK(minimal_feasible_sets(g.system) == oracle::minimal_sets(g.system));
  }
  const auto two = fixture::kpath(fixture::two_diamonds(), 1);
  CHECK(minimal_feasible_sets(two) == oracle::minimal_sets(two));
  const auto triple = fixture::kpath(fixture::parallel_edges(4), 2);
  CHECK(minimal_feasible_sets(triple) == oracle::minimal_sets(triple));
}

TEST_CASE("restriction") {
  const auto d = fixture::kpath(fixture::diamond());
  const auto r = restrict_system(d, AgentSet::all(4));
  CHECK(r.kind_name() == "explicit");
  CHECK(minimal_feasible_sets(r) == minimal_feasible_sets(d));
  CHECK_THROWS_AS(restrict_system(d, AgentSet(4, {0, 2})), MonopolyError);

  const SetSystem rk(fixture::groups({1, 1, 1, 1}, 2));
  const auto sub = restrict_system(rk, AgentSet(4, {0, 1, 2}));
  CHECK(minimal_feasible_sets(sub).size() == 3);

  const auto three = fixture::kpath(fixture::parallel_edges(3));
  const auto inside = minimal_feasible_sets_within(three, AgentSet(3, {0, 2}));
  REQUIRE(inside.size() == 2);
  CHECK(inside[0].members() == std::vector<AgentId>{0});
}

TEST_CASE("construction checks") {
  CHECK_THROWS_AS(SetSystem(KPathSystem{fixture::diamond(), 3}), ValidationError);
  CHECK_THROWS_AS(SetSystem(KPathSystem{fixture::diamond(), 0}), ValidationError);
  CHECK_THROWS_AS(SetSystem(ROutOfKSystem{3, {{0}, {1}}, 1}), ValidationError);
  CHECK_THROWS_AS(SetSystem(ROutOfKSystem{2, {{0}, {0, 1}}, 1}), ValidationError);
  CHECK_THROWS_AS(SetSystem(ROutOfKSystem{2, {{0}, {1}}, 3}), ValidationError);
  CHECK_THROWS_AS(DiGraph(3, 0, 2, {{0, 5}}), ValidationError);
  CHECK_THROWS_AS(UndirectedGraph(3, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(UndirectedGraph(3, {{1, 1}}), ValidationError);
}

TEST_CASE("bid checks") {
  const auto d = fixture::kpath(fixture::diamond());
  CHECK_NOTHROW(check_bids(d, std::vector<double>{0, 1, 2, 3}));
  CHECK_THROWS_AS(check_bids(d, std::vector<double>{0, 1, 2}), ValidationError);
  CHECK_THROWS_AS(check_bids(d, std::vector<double>{0, -1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(check_bids(d, std::vector<double>{0, 1, std::nan(""), 3}), ValidationError);
}
