#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ghom/colouring.hpp"
#include "ghom/errors.hpp"
#include "support/corpus.hpp"

using namespace ghom;

namespace {

Colouring single_part(const FiniteAmpleGroupoid& G) { return Colouring(G, {whole(G)}); }

// Flip the sign of the first nonzero entry of H_n.
bool flip_first_entry(IntMatrix& H) {
  for (std::size_t c = 0; c < H.cols(); ++c)
    for (std::size_t r = 0; r < H.rows(); ++r)
      if (!H.at(r, c).is_zero()) {
        H.set(r, c, Integer(0) - H.at(r, c));
        return true;
      }
  return false;
}

// All permutations satisfying the two defining conditions of sigma^x.
std::vector<Permutation> brute_sigma(const ColourVector& x) {
  std::vector<Permutation> out;
  Permutation p(x.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t j = 0; j + 1 < p.size() && ok; ++j) {
      if (x[p[j]] > x[p[j + 1]]) ok = false;
      if (x[p[j]] == x[p[j + 1]] && p[j] > p[j + 1]) ok = false;
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void for_each_vector(std::size_t len, std::size_t colours, const std::function<void(const ColourVector&)>& f) {
  ColourVector x(len, 0);
  while (true) {
    f(x);
    std::size_t k = 0;
    while (k < len && ++x[k] == colours) x[k++] = 0;
    if (k == len) return;
  }
}

}  // namespace

TEST_CASE("colouring validation") {
  auto G = pair_groupoid(3);
  auto H = generated_subgroupoid(G, {G.arrow("(1,2)")});
  CHECK_THROWS_AS(Colouring(G, {H}), MalformedSpec);
  CHECK_NOTHROW(Colouring(G, {H, generated_subgroupoid(G, {G.arrow("(3,3)")})}));
  auto other = pair_groupoid(2);
  CHECK_THROWS_AS(Colouring(G, {whole(other)}), MalformedSpec);
  try {
    Colouring(G, {H});
  } catch (const MalformedSpec& e) {
    CHECK(std::string(e.what()).find("(3,3)") != std::string::npos);
  }
}

TEST_CASE("cover examples") {
  auto P = pair_groupoid(2);
  auto U = cover(single_part(P));
  REQUIRE(U.elements.size() == 2);
  CHECK(U.elements[0].arrows == P.range_fiber(P.arrow("(1,1)")));
  CHECK(U.elements[1].arrows == P.range_fiber(P.arrow("(2,2)")));
  CHECK(U.letters.act(P.arrow("(2,1)"), 0) == 1);

  // Singleton parts: one singleton per arrow per colour containing its source.
  auto units = colouring_from_generators(P, {{P.arrow("(1,1)")}, {P.arrow("(1,1)"), P.arrow("(2,2)")}});
  auto V = cover(units);
  CHECK(V.elements.size() == 2 + 4);
  for (const auto& e : V.elements) CHECK(e.arrows.size() == 1);

  auto C2 = cyclic_group(2);
  auto W = cover(single_part(C2));
  REQUIRE(W.elements.size() == 1);
  CHECK(W.elements[0].arrows.size() == 2);
}

TEST_CASE("cover overlap and action") {
  for (const auto& [name, C] : testing::colouring_corpus()) {
    INFO(name);
    const auto& G = C.groupoid();
    auto U = cover(C);
    for (std::size_t a = 0; a < U.elements.size(); ++a) {
      const auto& e = U.elements[a];
      CHECK(!e.arrows.empty());
      for (Arrow g : e.arrows) CHECK(G.rng(g) == e.anchor);
      for (std::size_t b = a + 1; b < U.elements.size(); ++b) {
        const auto& f = U.elements[b];
        if (e.colour != f.colour) continue;
        std::vector<Arrow> common;
        std::set_intersection(e.arrows.begin(), e.arrows.end(), f.arrows.begin(), f.arrows.end(),
                              std::back_inserter(common));
        CHECK(common.empty());
      }
    }
    // g U is the translate of the arrow set, with the same colour.
    for (Arrow g = 0; g < G.size(); ++g)
      for (Point p = 0; p < U.letters.size(); ++p) {
        if (U.letters.anchor(p) != G.src(g)) continue;
        const auto& e = U.elements[p];
        const auto& t = U.elements[U.letters.act(g, p)];
        std::vector<Arrow> moved;
        for (Arrow h : e.arrows) moved.push_back(G.mul(g, h));
        std::sort(moved.begin(), moved.end());
        CHECK(t.arrows == moved);
        CHECK(t.colour == e.colour);
      }
  }
}

TEST_CASE("nerve examples") {
  auto P = pair_groupoid(2);
  auto N = nerve(single_part(P), 2);
  CHECK(N.space.size(0) == 2);
  CHECK(N.space.size(1) == 2);
  CHECK(N.space.size(2) == 2);
  CHECK(N.strict.size(1) == 0);
  CHECK(N.weak.size(1) == 2);

  for (const auto& [name, C] : testing::colouring_corpus()) {
    INFO(name);
    auto M = nerve(C, 2);
    const auto& G = C.groupoid();
    for (int n = 0; n <= 2; ++n) {
      const auto& L = M.space.level(n);
      for (std::size_t j = 0; j < L.size(); ++j) {
        auto t = L[j];
        Arrow w = M.witness[n][j];
        for (Point U : t) {
          const auto& a = M.cover.elements[U].arrows;
          CHECK(std::binary_search(a.begin(), a.end(), w));
        }
        CHECK(G.rng(w) == M.space.anchor(n, j));
        // Colour map is constant along the action.
        for (Arrow g : G.source_fiber(G.rng(w))) CHECK(M.colours(L[M.space.act(g, n, j)]) == M.colours(t));
      }
      CHECK(M.strict.size(n) <= M.weak.size(n));
      if (n > C.d()) CHECK(M.strict.size(n) == 0);
    }
  }
  CHECK_THROWS_AS(nerve(single_part(P), -1), IndexOutOfRange);
}

TEST_CASE("sigma examples") {
  auto s = sigma_x({1, 0, 1});
  CHECK(s == Permutation{1, 0, 2});
  CHECK(permutation_sign(s) == -1);
  CHECK(sigma_a(s, 1) == s);
  CHECK(sigma_a(s, 0) == Permutation{0, 1, 2});
  CHECK(sigma_a(s, 2) == s);
  CHECK(sigma_x({0, 1, 2}) == Permutation{0, 1, 2});
  CHECK(sigma_x({2, 2, 2}) == Permutation{0, 1, 2});
  CHECK(sigma_a(Permutation{2, 1, 0}, 1) == Permutation{2, 0, 1});
  CHECK_THROWS_AS(sigma_a(s, 3), IndexOutOfRange);
}

TEST_CASE("sigma uniqueness and sign identity") {
  for (std::size_t len = 1; len <= 5; ++len)
    for_each_vector(len, len, [&](const ColourVector& x) {
      auto all = brute_sigma(x);
      REQUIRE(all.size() == 1);
      CHECK(sigma_x(x) == all.front());
      const auto sigma = all.front();
      CHECK(sigma_a(sigma, len - 1) == sigma);
      for (std::size_t a = 0; a + 1 < len; ++a) {
        auto sa = sigma_a(sigma, a);
        auto ia = static_cast<std::size_t>(std::find(sa.begin(), sa.end(), sigma[a]) - sa.begin());
        int expect = permutation_sign(sigma_a(sigma, a + 1)) * (((ia + a) % 2 == 0) ? 1 : -1);
        CHECK(permutation_sign(sa) == expect);
      }
    });
}

TEST_CASE("homotopy examples") {
  auto P = pair_groupoid(2);
  auto N = nerve(single_part(P), 4);
  auto h = homotopy_h(N, 3);
  CHECK(certify_homotopy(h.chains).ok);
  CHECK(certify_homotopy(h.coinvariants).ok);
  auto k = homotopy_k(N, 3);
  CHECK(certify_homotopy(k.chains).ok);

  auto twice = Colouring(P, {whole(P), whole(P)});
  auto N2 = nerve(twice, 4);
  auto h2 = homotopy_h(N2, 3);
  CHECK(certify_homotopy(h2.chains).ok);
  CHECK(certify_homotopy(h2.coinvariants).ok);
  auto k2 = homotopy_k(N2, 3);
  CHECK(certify_homotopy(k2.chains).ok);
  CHECK(certify_homotopy(k2.coinvariants).ok);

  REQUIRE(flip_first_entry(h2.chains.homotopy_matrices[1]));
  CHECK_FALSE(certify_homotopy(h2.chains).ok);
  REQUIRE(flip_first_entry(k2.chains.homotopy_matrices[1]));
  CHECK_FALSE(certify_homotopy(k2.chains).ok);
  CHECK_THROWS_AS(homotopy_h(N2, 4), IndexOutOfRange);
}

TEST_CASE("k vanishes on strictly coloured simplices") {
  auto P = pair_groupoid(3);
  auto C = colouring_from_generators(P, {{P.arrow("(1,1)")}, {P.arrow("(1,2)")}, {P.arrow("(3,3)")}});
  auto N = nerve(C, 2);
  for (int n = 0; n <= 2; ++n)
    for (std::size_t j = 0; j < N.strict.size(n); ++j) {
      int emitted = 0;
      emit_k(N, N.strict.level(n)[j], [&](std::span<const Point>, int) { ++emitted; });
      CHECK(emitted == 0);
    }
}

TEST_CASE("homology of colourings") {
  auto P3 = pair_groupoid(3);
  auto whole3 = single_part(P3);
  CHECK(homology_of_colouring(whole3, 0).str() == "Z");
  for (int n = 1; n <= 3; ++n) CHECK(homology_of_colouring(whole3, n).is_zero());

  for (const auto& [name, G] : testing::groupoid_corpus()) {
    if (G.size() > 18) continue;
    INFO(name);
    auto units = colouring_from_generators(G, {G.units()});
    auto N = nerve(units, 3);
    // H_0 counts cover orbits; one per orbit of units.
    std::size_t orbits = N.space.orbits(0).representatives.size();
    CHECK(colouring_homology(N, 0).full == HomologyGroup{orbits, {}});
    for (int n = 1; n <= 2; ++n) CHECK(colouring_homology(N, n).full.is_zero());
  }
}

TEST_CASE("corpus certificates and vanishing in low degrees") {
  for (const auto& [name, C] : testing::colouring_corpus()) {
    INFO(name);
    auto N = nerve(C, C.d() + 2);
    auto h = homotopy_h(N, 1);
    CHECK(certify_homotopy(h.chains).ok);
    CHECK(certify_homotopy(h.coinvariants).ok);
    auto k = homotopy_k(N, 1);
    CHECK(certify_homotopy(k.chains).ok);
    CHECK(certify_homotopy(k.coinvariants).ok);
    auto top = colouring_homology(N, C.d() + 1);
    CHECK(top.full.is_zero());
    CHECK(top.agree());
  }
}
