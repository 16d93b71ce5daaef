#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ghom/chain_complex.hpp"
#include "ghom/groupoid.hpp"
#include "ghom/gset.hpp"

namespace ghom {

// Finite metric space with exact rational distances. The constructor checks
// symmetry, zero diagonal, positivity off the diagonal and the triangle
// inequality, throwing MalformedSpec with the offending points.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  FiniteMetricSpace(std::vector<std::string> points, std::vector<std::vector<mpq_class>> dist);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const mpq_class& dist(std::size_t a, std::size_t b) const { return dist_[a][b]; }
  mpq_class diameter(std::span<const std::size_t> tuple) const;

 private:
  std::vector<std::string> points_;
  std::vector<std::vector<mpq_class>> dist_;
};

// n-chain on X: finitely supported function X^{n+1} -> Z.
struct UfChain {
  int degree = 0;
  std::map<std::vector<std::size_t>, Integer> coefficients;  // zero entries are not stored

  mpq_class propagation(const FiniteMetricSpace& X) const;
  friend bool operator==(const UfChain&, const UfChain&) = default;
};

// sum_i (-1)^i d^i_*; throws DegreeZero in degree 0.
UfChain uf_boundary(const UfChain& c);

// Tuples of X^{n+1} in lexicographic order, encoded base |X|.
std::size_t uf_index(std::size_t points, std::span<const std::size_t> tuple);
std::vector<std::size_t> uf_tuple(std::size_t points, int n, std::size_t index);

// The complex of all chains in degrees 0..max_degree.
ComplexPtr uf_complex(const FiniteMetricSpace& X, int max_degree);
std::vector<Integer> to_vector(const FiniteMetricSpace& X, const UfChain& c);
UfChain from_vector(int degree, std::size_t points, const std::vector<Integer>& v);

// Translation between UF chains and coinvariants of EG for the pair groupoid
// on X:
//   alpha[a](x_0..x_n) = a((y,x_0),...,(y,x_n)) on orbit representatives,
//   beta(delta_x) = [((x_0,x_0),(x_0,x_1),...,(x_0,x_n))].
struct UfTranslation {
  FiniteMetricSpace space;
  FiniteAmpleGroupoid groupoid;
  std::vector<std::vector<Arrow>> pair_arrow;  // pair_arrow[i][j] = (x_i, x_j)
  TupleSpace eg;
  ComplexPtr uf;
  ComplexPtr coinvariants;
  std::vector<IntMatrix> alpha;  // Z[EG_n]_G -> UF_n
  std::vector<IntMatrix> beta;   // UF_n -> Z[EG_n]_G
};

UfTranslation uf_translation(const FiniteMetricSpace& X, int max_degree);

struct UfTranslationCheck {
  bool inverse = false;     // alpha beta = id and beta alpha = id
  bool chain_maps = false;  // both commute with the boundaries
};
UfTranslationCheck verify_translation(const UfTranslation& T);

UfChain alpha(const UfTranslation& T, int n, const std::vector<Integer>& coinvariant_class);
std::vector<Integer> beta(const UfTranslation& T, const UfChain& c);

HomologyGroup uf_homology(const FiniteMetricSpace& X, int n);

}  // namespace ghom
