#pragma once

#include <string>
#include <vector>

#include "ghom/colouring.hpp"
#include "ghom/groupoid.hpp"
#include "ghom/scale.hpp"

namespace ghom::testing {

struct NamedGroupoid {
  std::string name;
  FiniteAmpleGroupoid G;
};

FiniteAmpleGroupoid symmetric_group_3();
FiniteAmpleGroupoid klein_four();
FiniteAmpleGroupoid dihedral_4();
// Cyclic group of order m acting on points 0..n-1 by x -> x + g mod n (n | m).
FiniteAmpleGroupoid rotation_action(std::size_t m, std::size_t n);
FiniteAmpleGroupoid product(const FiniteAmpleGroupoid& A, const FiniteAmpleGroupoid& B);

// Groupoids with at most 60 arrows covering pair, group, action, union,
// restriction and product constructions.
std::vector<NamedGroupoid> groupoid_corpus();
std::vector<NamedGroupoid> principal_corpus();

struct NamedColouring {
  std::string name;
  Colouring C;
};

// Colourings of the corpus groupoids with at most 18 arrows: the whole
// groupoid, the unit space, and seeded random 2- and 3-colourings (4 colours
// on groupoids with at most 4 arrows).
std::vector<NamedColouring> colouring_corpus();

// Admissible scales: the units, everything, and two seeded random ones.
std::vector<std::pair<std::string, ScaleSet>> scale_family(const FiniteAmpleGroupoid& G);

}  // namespace ghom::testing
