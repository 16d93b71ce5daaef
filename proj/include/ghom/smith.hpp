#pragma once

#include <optional>
#include <vector>

#include "ghom/int_matrix.hpp"

namespace ghom {

struct SmithOptions {
  bool want_u = true;
  bool want_v = true;
  bool want_u_inverse = false;
  bool want_v_inverse = false;
};

// U * A * V = D with U, V unimodular; diagonal d1 | d2 | ... >= 0, nonzeros first.
struct SmithForm {
  IntMatrix D;
  std::optional<IntMatrix> U, V, U_inverse, V_inverse;
  std::vector<Integer> diagonal;  // min(rows, cols) entries
  std::size_t rank = 0;
};

// Dense elimination; pivot = minimal absolute value, ties by (row, col).
SmithForm smith_normal_form(const IntMatrix& A, const SmithOptions& options = {});

// Nonzero invariant factors in divisibility order. Sparse unit-pivot
// elimination first, dense Smith reduction on what remains.
std::vector<Integer> invariant_factors(const IntMatrix& A);

}  // namespace ghom
