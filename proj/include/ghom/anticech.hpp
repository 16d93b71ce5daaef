#pragma once

#include <optional>
#include <vector>

#include "ghom/colouring.hpp"
#include "ghom/homology_maps.hpp"
#include "ghom/matui.hpp"
#include "ghom/scale.hpp"

namespace ghom {

// Letter maps between tuple spaces: arrows (EG letters) and cover elements
// (nerve letters). Higher levels act componentwise.
using LetterMap = std::vector<Point>;

// Phi_0(g) = g G_i^{s(g)} with i the least colour such that s(g) is a unit of
// G_i and G^{s(g)} cap K lies in G_i. Verifies Phi_0(g) contains gK; throws
// NotLebesgue naming a unit where no colour qualifies.
LetterMap phi(const Nerve& N, const ScaleSet& K);

// Psi_0(g G_i^{s(g)}) = g tau_i(s(g)), tau_i from the principal blocks of G_i.
// Verifies Psi_0(U) in U and independence of the representative g.
LetterMap psi(const Nerve& N, bool maximal_basepoints = false);

// f(U) contains UK for every letter U of the source nerve.
bool inflates(const Nerve& source, const Nerve& target, const LetterMap& f, const ScaleSet& K);

// iota_0 = Phi_0 . Psi_0 from a K-bounded source nerve to a K^3-Lebesgue
// target; verifies iota_0(U) contains UK.
LetterMap iota(const Nerve& source, const Nerve& target, const ScaleSet& K);

// Both alpha(p) and beta(p) lie in a common translate gK.
bool close_in_nerve(const Nerve& target, const LetterMap& alpha, const LetterMap& beta, const ScaleSet& K);
// alpha(p)^-1 beta(p) in K.
bool close_in_eg(const FiniteAmpleGroupoid& G, const LetterMap& alpha, const LetterMap& beta, const ScaleSet& K);

// Componentwise morphism matrices on chains and on coinvariants.
TupleMorphism morphism(const TupleSpace& source, const TupleSpace& target, const LetterMap& f);

// h = sum_i (-1)^i h^i with h^i(x) = (a(x_0..x_i), b(x_i..x_n)), certifying
// d h + h d = b_* - a_* on degrees 0..max_degree. The target must be built to
// max_degree + 1; a missing tuple throws IntersectionWitnessNotFound.
HomotopyCertificates closeness_homotopy(const TupleSpace& source, const TupleSpace& target, const LetterMap& a,
                                        const LetterMap& b, int max_degree);

struct AntiCechStep {
  ScaleSet scale;
  Colouring colouring;
  Nerve nerve;
  LetterMap iota;                     // from the previous step; empty at step 0
  std::vector<HomologyGroup> homology;  // H_0..H_max of the colouring
  bool inflation_ok = true;           // iota(U) contains U K at this step's scale
};

struct AntiCechSequence {
  FiniteAmpleGroupoid groupoid;
  int max_degree = 0;
  std::vector<AntiCechStep> steps;
  std::optional<std::size_t> stable_index;
};

// Scales K_j grow from the units through the arrows in index order, reaching
// all of G at step m-1; K_{j+1} also absorbs the parts of C_j so that iota
// applies. C_j is the K_j^3-Lebesgue colouring. Stops once stable.
AntiCechSequence build_anti_cech(const FiniteAmpleGroupoid& G, int steps, int max_degree);

// Homology at the stabilization index; throws NotStabilized.
HomologyGroup anti_cech_homology(const AntiCechSequence& A, int n);

struct AntiCechComparison {
  std::vector<HomologyGroup> anti_cech;  // H_n of the stable colouring
  std::vector<HomologyGroup> groupoid;   // H_n(G)
  std::vector<bool> inverse;             // Phi_* Psi_* and Psi_* Phi_* are identities
  bool closeness_ok = false;             // both triangles commute up to certified homotopy
  bool ok() const;
};

// Induced map on the coinvariants of the ordered nerves in degree n.
IntMatrix strict_chain_map(const Nerve& source, const Nerve& target, const LetterMap& f, int n);

// Compares the stable stage with EG in degrees 0..max_degree.
AntiCechComparison compare_with_groupoid(const AntiCechSequence& A);

}  // namespace ghom
