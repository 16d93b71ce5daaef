#pragma once

#include <vector>

#include "ghom/chain_complex.hpp"

namespace ghom {

// Explicit homology: generators are cycles in C_n; coordinates read a cycle's
// class. Generators are ordered torsion first (orders[k] = d >= 2), then free
// (orders[k] = 0).
struct HomologyPresentation {
  HomologyGroup group;
  std::vector<Integer> orders;
  IntMatrix generators;   // dim C_n x g
  IntMatrix coordinates;  // g x dim C_n, meaningful on cycles
};

// Uses dense Smith reductions, so intended for small complexes.
HomologyPresentation present_homology(const IntegerChainComplex& C, int n);

// Presentation of a complex through a deformation retract: retraction r and
// inclusion i are chain maps with r*i = id and i*r homotopic to id.
HomologyPresentation transport_presentation(const HomologyPresentation& small,
                                            const IntMatrix& retraction,
                                            const IntMatrix& inclusion);

// Matrix of the map induced by the chain map F on homology, with torsion rows
// reduced modulo their orders.
IntMatrix induced_map(const HomologyPresentation& source, const IntMatrix& F,
                      const HomologyPresentation& target);

// Reduces row k modulo orders[k] where orders[k] > 0.
IntMatrix reduce_rows(const IntMatrix& M, const std::vector<Integer>& orders);

bool is_identity_on_homology(const IntMatrix& M, const std::vector<Integer>& orders);

}  // namespace ghom
