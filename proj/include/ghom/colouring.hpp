#pragma once

#include <span>
#include <vector>

#include "ghom/chain_complex.hpp"
#include "ghom/groupoid.hpp"
#include "ghom/gset.hpp"

namespace ghom {

// Ordered list of subgroupoids whose unit spaces cover the units.
class Colouring {
 public:
  Colouring() = default;
  // Throws MalformedSpec if a part belongs to another groupoid or a unit is
  // left uncovered (naming the unit).
  Colouring(FiniteAmpleGroupoid G, std::vector<Subgroupoid> parts);

  const FiniteAmpleGroupoid& groupoid() const { return G_; }
  const std::vector<Subgroupoid>& parts() const { return parts_; }
  std::size_t colour_count() const { return parts_.size(); }
  int d() const { return static_cast<int>(parts_.size()) - 1; }

 private:
  FiniteAmpleGroupoid G_;
  std::vector<Subgroupoid> parts_;
};

// Colouring whose parts are generated by the given arrow sets.
Colouring colouring_from_generators(const FiniteAmpleGroupoid& G,
                                    const std::vector<std::vector<Arrow>>& generators);

// The set g G_i^{s(g)} with its colour; anchor is the common range.
struct CoverElement {
  Arrow anchor = 0;
  std::size_t colour = 0;
  std::vector<Arrow> arrows;  // sorted
  friend bool operator==(const CoverElement&, const CoverElement&) = default;
};

struct Cover {
  std::vector<CoverElement> elements;  // sorted by (anchor, colour, arrows)
  // element_of[i][k]: the colour-i element containing arrow k, or kNoPoint
  // when s(k) is not a unit of part i.
  std::vector<std::vector<Point>> element_of;
  FiniteGSet letters;

  std::vector<Point> containing(Arrow k) const;
  std::string name(const FiniteAmpleGroupoid& G, Point U) const;
};

Cover cover(const Colouring& C);

using ColourVector = std::vector<std::size_t>;
using Permutation = std::vector<std::size_t>;  // j -> sigma(j)

struct Nerve {
  Colouring colouring;
  Cover cover;
  TupleSpace space;                         // N_0 .. N_max
  std::vector<std::vector<Arrow>> witness;  // minimal arrow in each simplex's intersection
  TupleSpace strict;                        // colours strictly increasing
  TupleSpace weak;                          // colours weakly increasing
  ComplexPtr coinvariant_chains;            // Z[N_*]_G
  ComplexPtr strict_coinvariant_chains;     // Z[N^>_*]_G

  ColourVector colours(std::span<const Point> simplex) const;
  std::string letter_name(Point U) const;
};

Nerve nerve(const Colouring& C, int max_degree);
ColourVector colour_map(const Nerve& N, std::span<const Point> simplex);

// sigma^x: i_{sigma(0)} <= i_{sigma(1)} <= ..., order-preserving on each colour class.
Permutation sigma_x(const ColourVector& x);
// Agrees with sigma below a, order-preserving from {a..n} onto the rest.
Permutation sigma_a(const Permutation& sigma, std::size_t a);
int permutation_sign(const Permutation& p);

// The homotopies are emitted as formulas so callers can assemble them on any
// pair of levels.
void emit_h(const Nerve& N, std::span<const Point> U, const TupleEmitter& emit);
void emit_p(const Nerve& N, std::span<const Point> U, const TupleEmitter& emit);
void emit_k(const Nerve& N, std::span<const Point> U, const TupleEmitter& emit);

struct HomotopyCertificates {
  ChainMapCertificate chains;
  ChainMapCertificate coinvariants;
};

// d h + h d = id - i p on Z[N_n] for 0 <= n <= max_degree; the nerve must be
// built to max_degree + 1.
HomotopyCertificates homotopy_h(const Nerve& N, int max_degree);
// d k + k d = id - j q on Z[N^>=_n].
HomotopyCertificates homotopy_k(const Nerve& N, int max_degree);

// Retraction q p: Z[N_n] -> Z[N^>_n] and inclusion i j back, on coinvariants.
IntMatrix strict_retraction(const Nerve& N, int n);
IntMatrix strict_inclusion(const Nerve& N, int n);

struct ColouringHomology {
  HomologyGroup full;    // H_n of Z[N_*]_G
  HomologyGroup strict;  // H_n of Z[N^>_*]_G
  bool agree() const { return full == strict; }
};
ColouringHomology colouring_homology(const Nerve& N, int n);
HomologyGroup homology_of_colouring(const Colouring& C, int n);

}  // namespace ghom
