#include "ghom/homology_maps.hpp"

#include <algorithm>
#include <numeric>

#include "ghom/errors.hpp"
#include "ghom/smith.hpp"

namespace ghom {

namespace {
std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t k = from; k < to; ++k) v.push_back(k);
  return v;
}
}  // namespace

HomologyPresentation present_homology(const IntegerChainComplex& C, int n) {
  HomologyPresentation out;
  const std::size_t dim = C.dim(n);
  if (dim == 0) {
    out.generators = IntMatrix(0, 0);
    out.coordinates = IntMatrix(0, 0);
    return out;
  }
  SmithOptions vopt{false, true, false, true};
  SmithForm in = smith_normal_form(C.boundary(n), vopt);
  const std::size_t r = in.rank;
  IntMatrix Zb = in.V->select_columns(range(r, dim));
  IntMatrix Zc = in.V_inverse->select_rows(range(r, dim));
  const std::size_t k = dim - r;

  IntMatrix M = Zc * C.boundary(n + 1);
  // Boundaries exhaust the cycles: skip the transform-tracking reduction.
  const auto factors = invariant_factors(M);
  if (factors.size() == k && std::all_of(factors.begin(), factors.end(), [](const Integer& f) { return f.is_unit(); })) {
    out.generators = IntMatrix(dim, 0);
    out.coordinates = IntMatrix(0, dim);
    return out;
  }
  SmithOptions uopt{true, false, true, false};
  SmithForm rel = smith_normal_form(M, uopt);
  IntMatrix basis = Zb * *rel.U_inverse;
  IntMatrix coords = *rel.U * Zc;

  std::vector<std::size_t> torsion_idx, free_idx;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < rel.rank) {
      if (rel.diagonal[i] > Integer(1)) {
        torsion_idx.push_back(i);
        out.orders.push_back(rel.diagonal[i]);
        out.group.torsion.push_back(rel.diagonal[i]);
      }
    } else {
      free_idx.push_back(i);
    }
  }
  out.group.free_rank = free_idx.size();
  out.orders.resize(torsion_idx.size() + free_idx.size(), Integer(0));
  std::vector<std::size_t> sel = torsion_idx;
  sel.insert(sel.end(), free_idx.begin(), free_idx.end());
  out.generators = basis.select_columns(sel);
  out.coordinates = coords.select_rows(sel);
  return out;
}

HomologyPresentation transport_presentation(const HomologyPresentation& small,
                                            const IntMatrix& retraction,
                                            const IntMatrix& inclusion) {
  HomologyPresentation out;
  out.group = small.group;
  out.orders = small.orders;
  out.generators = inclusion * small.generators;
  out.coordinates = small.coordinates * retraction;
  return out;
}

IntMatrix reduce_rows(const IntMatrix& M, const std::vector<Integer>& orders) {
  if (orders.size() != M.rows()) throw DimensionMismatch("order list does not match rows");
  std::vector<IntMatrix::Column> cols(M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j)
    M.for_each_in_column(j, [&](std::size_t i, const Integer& v) {
      cols[j].push_back({i, orders[i].is_zero() ? v : fmod(v, orders[i])});
    });
  return IntMatrix::from_columns(M.rows(), std::move(cols));
}

IntMatrix induced_map(const HomologyPresentation& source, const IntMatrix& F,
                      const HomologyPresentation& target) {
  return reduce_rows(target.coordinates * F * source.generators, target.orders);
}

bool is_identity_on_homology(const IntMatrix& M, const std::vector<Integer>& orders) {
  return reduce_rows(M, orders).is_identity() ||
         (M.rows() == 0 && M.cols() == 0);
}

}  // namespace ghom
