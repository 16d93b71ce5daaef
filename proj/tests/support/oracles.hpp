#pragma once

#include <gmpxx.h>

#include <vector>

#include "ghom/chain_complex.hpp"
#include "ghom/int_matrix.hpp"

namespace ghom::testing {

// Fraction-free Gaussian elimination; square matrices only.
Integer bareiss_determinant(const IntMatrix& A);

// Rank over the rationals by plain Gaussian elimination on mpq_class.
std::size_t rational_rank(const IntMatrix& A);

// dim C_n - rank d_n - rank d_{n+1}, all ranks over Q.
std::size_t rational_betti(const IntegerChainComplex& C, int n);

// H_n of the cyclic group of order m from the periodic resolution.
HomologyGroup cyclic_group_homology(int m, int n);

}  // namespace ghom::testing
