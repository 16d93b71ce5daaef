#include <random>

#include "doctest.h"
#include "ghom/errors.hpp"
#include "ghom/int_matrix.hpp"
#include "ghom/integer.hpp"
#include "support/oracles.hpp"

using namespace ghom;

TEST_CASE("integer arithmetic promotes past 64 bits and comes back") {
  Integer big = Integer(INT64_MAX) + Integer(1);
  CHECK_FALSE(big.is_small());
  CHECK(big.str() == "9223372036854775808");
  CHECK((big - Integer(1)).is_small());
  Integer sq = Integer(INT64_MIN) * Integer(INT64_MIN);
  CHECK(sq.str() == "85070591730234615865843651857942052864");
  CHECK((-Integer(INT64_MIN)).str() == "9223372036854775808");
  CHECK(Integer::parse("-123456789012345678901234567890").str() == "-123456789012345678901234567890");
  CHECK_THROWS_AS(Integer::parse("12a"), ParseError);
}

TEST_CASE("integer division helpers") {
  CHECK(tdiv(Integer(-7), Integer(2)) == Integer(-3));
  CHECK(trem(Integer(-7), Integer(2)) == Integer(-1));
  CHECK(fdiv(Integer(-7), Integer(2)) == Integer(-4));
  CHECK(fmod(Integer(-7), Integer(3)) == Integer(2));
  CHECK(gcd(Integer(12), Integer(-18)) == Integer(6));
  CHECK(divides(Integer(3), Integer(12)));
  CHECK_FALSE(divides(Integer(5), Integer(12)));
}

TEST_CASE("dense and sparse products agree") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t a = 1 + rng() % 90, b = 1 + rng() % 90, c = 1 + rng() % 90;
    std::vector<std::vector<Integer>> A(a, std::vector<Integer>(b)), B(b, std::vector<Integer>(c));
    for (auto& r : A)
      for (auto& x : r) x = (rng() % 4 == 0) ? Integer(v(rng)) : Integer(0);
    for (auto& r : B)
      for (auto& x : r) x = (rng() % 4 == 0) ? Integer(v(rng)) : Integer(0);
    IntMatrix P = IntMatrix::from_rows(A, b) * IntMatrix::from_rows(B, c);
    for (std::size_t i = 0; i < a; i += 7)
      for (std::size_t k = 0; k < c; k += 5) {
        Integer s(0);
        for (std::size_t j = 0; j < b; ++j) s += A[i][j] * B[j][k];
        CHECK(P.at(i, k) == s);
      }
  }
}

TEST_CASE("first_difference reports the earliest entry in row-major order") {
  IntMatrix A(3, 3), B(3, 3);
  B.set(2, 0, Integer(5));
  B.set(1, 2, Integer(-1));
  auto d = A.first_difference(B);
  REQUIRE(d);
  CHECK(d->row == 1);
  CHECK(d->col == 2);
  CHECK(d->rhs == Integer(-1));
  CHECK_FALSE(A.first_difference(A));
}

TEST_CASE("Bareiss oracle on a known determinant") {
  IntMatrix A = IntMatrix::from_rows({{2, 4}, {6, 8}});
  CHECK(testing::bareiss_determinant(A) == Integer(-8));
  CHECK(testing::bareiss_determinant(IntMatrix::identity(5)) == Integer(1));
}
