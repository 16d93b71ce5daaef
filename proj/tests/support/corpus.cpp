#include "support/corpus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

namespace ghom::testing {

namespace {

// Group given by permutations of {0..k-1}; elements named by their images.
FiniteAmpleGroupoid permutation_group(const std::vector<std::vector<int>>& perms) {
  auto name = [](const std::vector<int>& p) {
    std::string s = "p";
    for (int v : p) s += std::to_string(v);
    return s;
  };
  std::vector<std::string> names;
  for (const auto& p : perms) names.push_back(name(p));
  std::vector<std::array<std::string, 3>> mul;
  for (const auto& a : perms)
    for (const auto& b : perms) {
      std::vector<int> ab(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[b[i]];
      mul.push_back({name(a), name(b), name(ab)});
    }
  return group_from_table(names, mul);
}

}  // namespace

FiniteAmpleGroupoid symmetric_group_3() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return permutation_group(perms);
}

FiniteAmpleGroupoid klein_four() {
  return permutation_group({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

FiniteAmpleGroupoid dihedral_4() {
  std::vector<std::vector<int>> perms;
  for (int r = 0; r < 4; ++r) {
    std::vector<int> rot(4), ref(4);
    for (int i = 0; i < 4; ++i) {
      rot[i] = (i + r) % 4;
      ref[i] = (4 - i + r) % 4;
    }
    perms.push_back(rot);
    perms.push_back(ref);
  }
  return permutation_group(perms);
}

FiniteAmpleGroupoid rotation_action(std::size_t m, std::size_t n) {
  FiniteAmpleGroupoid C = cyclic_group(m);
  std::vector<std::string> pts;
  for (std::size_t x = 0; x < n; ++x) pts.push_back("x" + std::to_string(x));
  std::vector<std::array<std::string, 3>> act;
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t x = 0; x < n; ++x)
      act.push_back({"g" + std::to_string(g), pts[x], pts[(x + g) % n]});
  return action_groupoid(C, pts, act);
}

FiniteAmpleGroupoid product(const FiniteAmpleGroupoid& A, const FiniteAmpleGroupoid& B) {
  const std::size_t nb = B.size();
  GroupoidTable t;
  for (Arrow a = 0; a < A.size(); ++a)
    for (Arrow b = 0; b < nb; ++b) {
      t.ids.push_back("(" + A.id(a) + "|" + B.id(b) + ")");
      t.src.push_back(A.src(a) * nb + B.src(b));
      t.rng.push_back(A.rng(a) * nb + B.rng(b));
      t.inv.push_back(A.inv(a) * nb + B.inv(b));
    }
  t.compose = [&](std::size_t g, std::size_t h) {
    return A.mul(g / nb, h / nb) * nb + B.mul(g % nb, h % nb);
  };
  return FiniteAmpleGroupoid(t);
}

std::vector<NamedGroupoid> groupoid_corpus() {
  std::vector<NamedGroupoid> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back({"pair" + std::to_string(n), pair_groupoid(n)});
  for (std::size_t m = 1; m <= 8; ++m) out.push_back({"cyclic" + std::to_string(m), cyclic_group(m)});
  out.push_back({"S3", symmetric_group_3()});
  out.push_back({"V4", klein_four()});
  out.push_back({"D4", dihedral_4()});
  out.push_back({"swap", rotation_action(2, 2)});
  out.push_back({"rot3", rotation_action(3, 3)});
  out.push_back({"rot4", rotation_action(4, 4)});
  out.push_back({"rot4on2", rotation_action(4, 2)});
  out.push_back({"rot6on3", rotation_action(6, 3)});
  out.push_back({"trivial2", rotation_action(2, 1)});
  {
    FiniteAmpleGroupoid S3 = symmetric_group_3();
    std::vector<std::string> pts{"a", "b", "c"};
    std::vector<std::array<std::string, 3>> act;
    for (Arrow g = 0; g < S3.size(); ++g)
      for (int x = 0; x < 3; ++x) act.push_back({S3.id(g), pts[x], pts[S3.id(g)[1 + x] - '0']});
    out.push_back({"S3on3", action_groupoid(S3, pts, act)});
  }
  out.push_back({"pair2+pair2", disjoint_union({pair_groupoid(2), pair_groupoid(2)})});
  out.push_back({"pair2+pair3", disjoint_union({pair_groupoid(2), pair_groupoid(3)})});
  out.push_back({"pair1+cyclic2", disjoint_union({pair_groupoid(1), cyclic_group(2)})});
  out.push_back({"pair2x3", disjoint_union({pair_groupoid(2), pair_groupoid(2), pair_groupoid(2)})});
  out.push_back({"cyclic2+cyclic3", disjoint_union({cyclic_group(2), cyclic_group(3)})});
  {
    FiniteAmpleGroupoid P = pair_groupoid(5);
    out.push_back({"pair5|3", restriction(P, {P.arrow("(1,1)"), P.arrow("(3,3)"), P.arrow("(4,4)")})});
    FiniteAmpleGroupoid U = disjoint_union({pair_groupoid(3), cyclic_group(2)});
    out.push_back({"union|2", restriction(U, {U.arrow("0/(1,1)"), U.arrow("1/g0")})});
  }
  out.push_back({"pair2xC2", product(pair_groupoid(2), cyclic_group(2))});
  out.push_back({"pair3xC3", product(pair_groupoid(3), cyclic_group(3))});
  out.push_back({"pair2xpair3", product(pair_groupoid(2), pair_groupoid(3))});
  return out;
}

std::vector<NamedGroupoid> principal_corpus() {
  std::vector<NamedGroupoid> out;
  for (auto& g : groupoid_corpus())
    if (is_principal(g.G)) out.push_back(std::move(g));
  return out;
}

}  // namespace ghom::testing

namespace ghom::testing {

namespace {

Colouring random_colouring(const FiniteAmpleGroupoid& G, std::size_t colours, std::mt19937& rng) {
  std::vector<std::vector<Arrow>> gens(colours);
  std::bernoulli_distribution pick(0.3);
  std::uniform_int_distribution<std::size_t> colour(0, colours - 1);
  for (Arrow a = 0; a < G.size(); ++a)
    if (!G.is_unit(a) && pick(rng)) gens[colour(rng)].push_back(a);
  for (Arrow x : G.units()) gens[colour(rng)].push_back(x);
  // Every colour gets at least one unit so no part is empty.
  for (std::size_t i = 0; i < colours; ++i)
    if (gens[i].empty()) gens[i].push_back(G.units()[colour(rng) % G.units().size()]);
  return colouring_from_generators(G, gens);
}

}  // namespace

std::vector<NamedColouring> colouring_corpus() {
  std::mt19937 rng(20240611);
  std::vector<NamedColouring> out;
  for (const auto& [name, G] : groupoid_corpus()) {
    if (G.size() > 18) continue;
    out.push_back({name + "/whole", Colouring(G, {whole(G)})});
    out.push_back({name + "/units", colouring_from_generators(G, {G.units()})});
    out.push_back({name + "/rand2", random_colouring(G, 2, rng)});
    out.push_back({name + "/rand3", random_colouring(G, 3, rng)});
    if (G.size() <= 4) out.push_back({name + "/rand4", random_colouring(G, 4, rng)});
  }
  return out;
}

}  // namespace ghom::testing

namespace ghom::testing {

std::vector<std::pair<std::string, ScaleSet>> scale_family(const FiniteAmpleGroupoid& G) {
  std::vector<std::pair<std::string, ScaleSet>> out{{"units", ScaleSet::units(G)}, {"all", ScaleSet::all(G)}};
  std::mt19937 rng(static_cast<unsigned>(G.size() * 7919 + G.unit_count()));
  for (int r = 0; r < 2; ++r) {
    std::bernoulli_distribution pick(r == 0 ? 0.2 : 0.5);
    std::vector<Arrow> a;
    for (Arrow g = 0; g < G.size(); ++g)
      if (pick(rng)) a.push_back(g);
    out.push_back({"random" + std::to_string(r), admissible_closure(G, ScaleSet(G, a))});
  }
  return out;
}

}  // namespace ghom::testing
