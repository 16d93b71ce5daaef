#pragma once

#include <vector>

#include "ghom/chain_complex.hpp"
#include "ghom/groupoid.hpp"
#include "ghom/gset.hpp"

namespace ghom {

// Z-valued function on arrows, indexed by arrow; units carry unit functions.
using ArrowFunction = std::vector<Integer>;

ArrowFunction indicator(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& set);
ArrowFunction convolution(const FiniteAmpleGroupoid& G, const ArrowFunction& f, const ArrowFunction& g);
// Sum over source fibers; the result is supported on units.
ArrowFunction augmentation(const FiniteAmpleGroupoid& G, const ArrowFunction& f);

// Composable tuples (g1, ..., gn) with src(g_i) = rng(g_{i+1}); level 0 holds
// the units as 1-tuples.
class ComposableTuples {
 public:
  ComposableTuples(FiniteAmpleGroupoid G, int max_degree);
  const FiniteAmpleGroupoid& groupoid() const { return G_; }
  int top_degree() const { return static_cast<int>(levels_.size()) - 1; }
  const TupleLevel& level(int n) const { return levels_.at(n); }
  std::size_t size(int n) const { return levels_.at(n).size(); }
  // Face i of tuple j in level n >= 1.
  std::vector<Point> face(int n, std::span<const Point> t, int i) const;
  IntMatrix boundary(int n) const;

 private:
  FiniteAmpleGroupoid G_;
  std::vector<TupleLevel> levels_;
};

// Matui (bar) complex in degrees 0..max_degree.
ComplexPtr matui_complex(const FiniteAmpleGroupoid& G, int max_degree);
HomologyGroup homology_of_groupoid(const FiniteAmpleGroupoid& G, int n);

// EG_n: (n+1)-tuples of arrows with common range, G acting by left
// multiplication. The scale-restricted EG^K keeps tuples with g_i^-1 g_j in K
// (level 0 is always all of G).
TupleSpace eg_space(const FiniteAmpleGroupoid& G, int max_degree);
TupleSpace eg_space(const FiniteAmpleGroupoid& G, int max_degree, const std::vector<bool>& K);

struct EgComplex {
  TupleSpace space;
  ComplexPtr chains;        // Z[EG_*]
  ComplexPtr coinvariants;  // Z[EG_*]_G
};
EgComplex eg_complex(const FiniteAmpleGroupoid& G, int max_degree);

// Mutually inverse maps between the Matui complex and the coinvariants of EG.
struct BarIsomorphism {
  std::vector<IntMatrix> to_eg;    // A_n: Z[BG_n] -> Z[EG_n]_G
  std::vector<IntMatrix> from_eg;  // B_n: Z[EG_n]_G -> Z[BG_n]
  bool inverse = false;            // A B = id and B A = id in every degree
  bool chain_maps = false;         // both commute with the boundaries
};
BarIsomorphism bar_isomorphism(const FiniteAmpleGroupoid& G, int max_degree);

// Augmented EG complex: degree -1 is Z[G^0] with the boundary induced by r.
ComplexPtr augmented_eg_complex(const TupleSpace& EG);

// Contraction h(x) = (x), h(g0..gn) = (r(g0), g0, ..., gn) certifying
// d h + h d = id on degrees -1..max_degree.
ChainMapCertificate resolution_contraction(const FiniteAmpleGroupoid& G, int max_degree);

struct TensorShiftResult {
  bool ok = false;
  std::size_t tensor_rank = 0;  // rank of Z[G] (x)_{Z[G^0]} Z[EG_n]
  std::size_t target_rank = 0;  // |EG_{n+1}|
  std::string detail;
};
TensorShiftResult tensor_shift_check(const FiniteAmpleGroupoid& G, int n);

}  // namespace ghom
