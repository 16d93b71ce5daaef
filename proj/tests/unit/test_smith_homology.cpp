#include <random>

#include "doctest.h"
#include "ghom/chain_complex.hpp"
#include "ghom/errors.hpp"
#include "ghom/homology_maps.hpp"
#include "ghom/smith.hpp"
#include "support/oracles.hpp"

using namespace ghom;

namespace {

bool is_smith_diagonal(const SmithForm& S) {
  for (std::size_t i = 0; i < S.D.rows(); ++i)
    for (std::size_t j = 0; j < S.D.cols(); ++j)
      if (i != j && !S.D.at(i, j).is_zero()) return false;
  for (std::size_t k = 0; k + 1 < S.diagonal.size(); ++k) {
    if (S.diagonal[k] < Integer(0)) return false;
    if (!S.diagonal[k].is_zero() && !divides(S.diagonal[k], S.diagonal[k + 1])) return false;
    if (S.diagonal[k].is_zero() && !S.diagonal[k + 1].is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto S = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(S.diagonal == std::vector<Integer>{Integer(2), Integer(4)});
  CHECK(*S.U * IntMatrix::from_rows({{2, 4}, {6, 8}}) * *S.V == S.D);
  auto I = smith_normal_form(IntMatrix::identity(3));
  CHECK(I.D.is_identity());
  auto Z = smith_normal_form(IntMatrix(2, 3));
  CHECK(Z.D.is_zero());
  CHECK(Z.rank == 0);
  auto E = smith_normal_form(IntMatrix(0, 4));
  CHECK(E.diagonal.empty());
}

TEST_CASE("smith transforms and inverses on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    std::vector<std::vector<Integer>> rows(r, std::vector<Integer>(c));
    for (auto& row : rows)
      for (auto& x : row) x = rng() % 3 == 0 ? Integer(v(rng)) : Integer(0);
    IntMatrix A = IntMatrix::from_rows(rows, c);
    auto S = smith_normal_form(A, {true, true, true, true});
    CHECK(*S.U * A * *S.V == S.D);
    CHECK((*S.U * *S.U_inverse).is_identity());
    CHECK((*S.V * *S.V_inverse).is_identity());
    CHECK(is_smith_diagonal(S));
    CHECK(abs(testing::bareiss_determinant(*S.U)) == Integer(1));
    std::vector<Integer> nz;
    for (auto& d : S.diagonal)
      if (!d.is_zero()) nz.push_back(d);
    CHECK(invariant_factors(A) == nz);
  }
}

TEST_CASE("homology of small complexes") {
  // 0 -> Z --2--> Z -> 0
  IntegerChainComplex C(0, {BasisNames(1, {}), BasisNames(1, {})}, {IntMatrix::from_rows({{2}})});
  auto h0 = homology(C, 0);
  CHECK(h0.free_rank == 0);
  CHECK(h0.torsion == std::vector<Integer>{Integer(2)});
  CHECK(h0.str() == "Z/2");
  CHECK(homology(C, 1).is_zero());
  IntegerChainComplex F(0, {BasisNames(3, {})}, {});
  CHECK(homology(F, 0).str() == "Z^3");
  CHECK_THROWS_AS(IntegerChainComplex(0, {BasisNames(1, {}), BasisNames(1, {}), BasisNames(1, {})},
                                      {IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})}),
                  NotAComplex);
}

TEST_CASE("homology group formatting") {
  HomologyGroup g;
  g.free_rank = 1;
  g.torsion = {Integer(2), Integer(4)};
  CHECK(g.str() == "Z + Z/2 + Z/4");
  CHECK(HomologyGroup{}.str() == "0");
}

TEST_CASE("certificate locates a perturbed entry") {
  auto C = std::make_shared<const IntegerChainComplex>(
      0, std::vector<BasisNames>{BasisNames(1, {}), BasisNames(1, {})},
      std::vector<IntMatrix>{IntMatrix::from_rows({{1}})});
  ChainMapCertificate cert;
  cert.source = cert.target = C;
  cert.first_degree = 0;
  cert.last_degree = 1;
  cert.map_matrices = {{0, IntMatrix::identity(1)}, {1, IntMatrix::identity(1)}};
  cert.homotopy_matrices = {{0, IntMatrix::from_rows({{1}})}, {1, IntMatrix(0, 1)}};
  CHECK(certify_homotopy(cert).ok);
  cert.homotopy_matrices[0] = IntMatrix::from_rows({{2}});
  auto r = certify_homotopy(cert);
  CHECK_FALSE(r.ok);
  REQUIRE(r.discrepancy);
  CHECK(r.discrepancy->degree == 0);
  CHECK(r.str() == "FAIL(degree=0 row=0 col=0 lhs=2 rhs=1)");
}

TEST_CASE("homology presentation of Z/2 + Z") {
  // d1 = [[2, 0]]: C1 = Z^2 -> C0 = Z gives H0 = Z/2, H1 = Z.
  IntegerChainComplex C(0, {BasisNames(1, {}), BasisNames(2, {})}, {IntMatrix::from_rows({{2, 0}})});
  auto p0 = present_homology(C, 0);
  CHECK(p0.group.str() == "Z/2");
  CHECK(p0.orders == std::vector<Integer>{Integer(2)});
  auto p1 = present_homology(C, 1);
  CHECK(p1.group.str() == "Z");
  CHECK(is_identity_on_homology(induced_map(p1, IntMatrix::identity(2), p1), p1.orders));
  CHECK(is_identity_on_homology(induced_map(p0, IntMatrix::identity(1), p0), p0.orders));
  CHECK(is_identity_on_homology(induced_map(p0, IntMatrix::from_rows({{3}}), p0), p0.orders));
  CHECK_FALSE(is_identity_on_homology(induced_map(p1, -IntMatrix::identity(2), p1), p1.orders));
}
