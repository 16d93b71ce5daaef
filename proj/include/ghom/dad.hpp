#pragma once

#include <optional>
#include <vector>

#include "ghom/colouring.hpp"
#include "ghom/scale.hpp"

namespace ghom {

// B_0 is a set of units; blocks are B_1..B_n, bisections with
// r^-1(B_0) cap K = B_1 u ... u B_n, each mapped by r onto B_0, with
// pairwise disjoint sources.
struct CombBlocks {
  std::vector<Arrow> base;
  std::vector<std::vector<Arrow>> blocks;
};

CombBlocks comb_blocks(const FiniteAmpleGroupoid& G, const ScaleSet& K, Arrow x);
// Checks the three block conditions exactly.
bool verify_comb_blocks(const FiniteAmpleGroupoid& G, const ScaleSet& K, const CombBlocks& B);

// G_x: arrows rho_i^-1 rho_j between the sources of the blocks at x.
Subgroupoid comb_subgroupoid(const FiniteAmpleGroupoid& G, const ScaleSet& K, Arrow x);

// K-Lebesgue colouring from the G_x, x a unit, selected greedily by
// (|G_x^0| descending, x ascending). A candidate is taken when it swallows
// G^y cap K for some unit y not yet handled.
Colouring k_lebesgue_colouring(const FiniteAmpleGroupoid& G, const ScaleSet& K);

// <{g in K : r(g), s(g) in U}>
Subgroupoid generated_on(const FiniteAmpleGroupoid& G, const ScaleSet& K, const std::vector<Arrow>& units);

struct DadWitness {
  ScaleSet scale;
  std::vector<std::vector<Arrow>> cover;  // unit subsets U_0..U_d
  std::vector<Subgroupoid> generated;
  std::size_t size_cap = 0;
  bool greedy = false;  // found by the greedy search rather than exhaustively
  int d() const { return static_cast<int>(cover.size()) - 1; }
};

// Throws WitnessInvalid if the cover misses a unit of r(K) u s(K), or a
// generated subgroupoid is missing or exceeds the cap.
void validate_witness(const FiniteAmpleGroupoid& G, const DadWitness& w);
DadWitness make_witness(const FiniteAmpleGroupoid& G, const ScaleSet& K,
                        std::vector<std::vector<Arrow>> cover, std::size_t size_cap);

// Smallest d <= d_max admitting a witness; exact for at most 12 units.
std::optional<DadWitness> search_witness(const FiniteAmpleGroupoid& G, const ScaleSet& K, int d_max,
                                         std::size_t size_cap);

// The witness must be taken at scale K^3 with K admissible. Parts are
// <{g in K : r(g), s(g) in W_i}> with W_i = s(r^-1(U_i) cap K); empty parts
// are dropped.
Colouring dad_witness_to_colouring(const FiniteAmpleGroupoid& G, const ScaleSet& K, const DadWitness& w);

}  // namespace ghom
