#include <random>

#include "doctest.h"
#include "ghom/errors.hpp"
#include "ghom/groupoid.hpp"
#include "support/corpus.hpp"

using namespace ghom;

TEST_CASE("pair groupoid structure") {
  auto G = pair_groupoid(2);
  CHECK(G.size() == 4);
  CHECK(G.unit_count() == 2);
  CHECK(G.compose(G.arrow("(1,2)"), G.arrow("(2,1)")) == G.arrow("(1,1)"));
  CHECK_FALSE(G.compose(G.arrow("(1,2)"), G.arrow("(1,2)")));
  auto f = fiber(G, G.arrow("(1,1)"), FiberKind::range);
  CHECK(f == std::vector<Arrow>{G.arrow("(1,1)"), G.arrow("(1,2)")});
  CHECK(is_principal(G));
}

TEST_CASE("cyclic group of order two") {
  auto G = cyclic_group(2);
  CHECK(G.unit_count() == 1);
  CHECK(G.inv(G.arrow("g1")) == G.arrow("g1"));
  CHECK(fiber(G, G.arrow("g0"), FiberKind::range).size() == 2);
  CHECK_FALSE(is_principal(G));
}

TEST_CASE("swap action is principal and isomorphic to pair(2)") {
  auto A = testing::rotation_action(2, 2);
  CHECK(A.size() == 4);
  CHECK(A.unit_count() == 2);
  CHECK(is_principal(A));
  CHECK(find_isomorphism(A, pair_groupoid(2)));
  CHECK_FALSE(find_isomorphism(cyclic_group(4), testing::klein_four()));
}

TEST_CASE("fibers of a disjoint union stay in their block") {
  auto U = disjoint_union({pair_groupoid(2), pair_groupoid(3)});
  auto f = fiber(U, U.arrow("1/(2,2)"), FiberKind::source);
  CHECK(f.size() == 3);
  for (Arrow a : f) CHECK(U.id(a).rfind("1/", 0) == 0);
  CHECK_THROWS_AS(fiber(U, U.arrow("1/(1,2)"), FiberKind::source), UnknownUnit);
}

TEST_CASE("generated subgroupoids") {
  auto G = pair_groupoid(3);
  auto H = generated_subgroupoid(G, {G.arrow("(1,2)")});
  std::vector<Arrow> want{G.arrow("(1,1)"), G.arrow("(1,2)"), G.arrow("(2,1)"), G.arrow("(2,2)")};
  std::sort(want.begin(), want.end());
  CHECK(H.members() == want);
  CHECK(generated_subgroupoid(G, {}).empty());
  auto C = cyclic_group(4);
  CHECK(generated_subgroupoid(C, {C.arrow("g1")}).size() == 4);
  CHECK(generated_subgroupoid(C, {C.arrow("g2")}).size() == 2);
}

TEST_CASE("generated subgroupoid is idempotent and monotone on the corpus") {
  std::mt19937_64 rng(3);
  for (const auto& [name, G] : testing::groupoid_corpus()) {
    std::vector<Arrow> S, T;
    for (Arrow a = 0; a < G.size(); ++a) {
      if (rng() % 5 == 0) S.push_back(a);
      if (rng() % 7 == 0) T.push_back(a);
    }
    auto H = generated_subgroupoid(G, S);
    CHECK(generated_subgroupoid(G, H.members()) == H);
    std::vector<Arrow> ST = S;
    ST.insert(ST.end(), T.begin(), T.end());
    auto HT = generated_subgroupoid(G, ST);
    for (Arrow a : H.members()) CHECK(HT.contains(a));
  }
}

TEST_CASE("malformed tables are rejected with a witness") {
  GroupoidTable t;
  t.ids = {"e", "a"};
  t.src = {0, 0};
  t.rng = {0, 0};
  t.inv = {0, 1};
  t.compose = [](std::size_t g, std::size_t h) { return (g == 1 && h == 1) ? std::size_t{1} : g + h; };
  CHECK_THROWS_AS(FiniteAmpleGroupoid{t}, MalformedSpec);
  std::vector<std::array<std::string, 3>> bad{{"e", "e", "e"}, {"e", "a", "a"}, {"a", "e", "a"}};
  CHECK_THROWS_WITH_AS(group_from_table({"e", "a"}, bad), doctest::Contains("missing entry"), MalformedSpec);
  FiniteAmpleGroupoid C2 = cyclic_group(2);
  std::vector<std::array<std::string, 3>> act{{"g0", "x", "x"}, {"g0", "y", "y"}, {"g1", "x", "x"}, {"g1", "y", "x"}};
  CHECK_THROWS_WITH_AS(action_groupoid(C2, {"x", "y"}, act), doctest::Contains("bijection"), MalformedSpec);
}

TEST_CASE("non-associative table is caught") {
  // Loop of order 5 that is not a group: every row a permutation, identity e.
  std::vector<std::string> el{"e", "a", "b", "c", "d"};
  int tab[5][5] = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  std::vector<std::array<std::string, 3>> mul;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) mul.push_back({el[i], el[j], el[tab[i][j]]});
  CHECK_THROWS_WITH_AS(group_from_table(el, mul), doctest::Contains("associative"), MalformedSpec);
}

TEST_CASE("principal blocks and sections") {
  auto G = pair_groupoid(3);
  auto B = principal_blocks(whole(G));
  REQUIRE(B.blocks.size() == 1);
  CHECK(B.blocks[0].basepoint() == G.arrow("(1,1)"));
  CHECK(B.tau(G.arrow("(2,2)")) == G.arrow("(2,1)"));
  auto U = disjoint_union({pair_groupoid(2), pair_groupoid(2)});
  CHECK(principal_blocks(whole(U)).blocks.size() == 2);
  auto units = generated_subgroupoid(G, {G.arrow("(1,1)"), G.arrow("(2,2)"), G.arrow("(3,3)")});
  auto T = principal_blocks(units);
  CHECK(T.blocks.size() == 3);
  for (Arrow x : G.units()) CHECK(T.tau(x) == x);
  CHECK_THROWS_AS(principal_blocks(whole(cyclic_group(2))), NotPrincipal);
}

TEST_CASE("sections and reassembly on principal corpus") {
  for (const auto& [name, G] : testing::principal_corpus()) {
    auto B = principal_blocks(whole(G));
    for (Arrow x : G.units()) {
      CHECK(G.rng(B.tau(x)) == x);
      CHECK(G.src(B.tau(x)) == B.sigma(x));
    }
    if (G.size() <= 32) {
      INFO(name);
      CHECK(find_isomorphism(reassemble(G, B), G));
    }
  }
}

TEST_CASE("associativity holds exhaustively on corpus groupoids") {
  for (const auto& [name, G] : testing::groupoid_corpus()) {
    if (G.size() > 64) continue;
    for (Arrow g = 0; g < G.size(); ++g)
      for (Arrow h : G.range_fiber(G.src(g)))
        for (Arrow k : G.range_fiber(G.src(h))) REQUIRE(G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k)));
  }
}
