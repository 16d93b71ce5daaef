#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghom/chain_complex.hpp"
#include "ghom/groupoid.hpp"

namespace ghom {

using Point = std::uint32_t;
inline constexpr Point kNoPoint = UINT32_MAX;

// Finite left G-space: points 0..P-1 with anchor p and g.x defined when
// src(g) = anchor(x).
class FiniteGSet {
 public:
  FiniteGSet() = default;
  // act(g, x) is queried for every x and every g in the source fiber of
  // anchor(x). Validates the action axioms.
  FiniteGSet(FiniteAmpleGroupoid G, std::vector<Arrow> anchors,
             const std::function<Point(Arrow, Point)>& act);

  const FiniteAmpleGroupoid& groupoid() const { return G_; }
  std::size_t size() const { return anchor_.size(); }
  Arrow anchor(Point x) const { return anchor_[x]; }
  Point act(Arrow g, Point x) const { return table_[offset_[x] + G_.source_position(g)]; }
  bool is_free() const;

 private:
  FiniteAmpleGroupoid G_;
  std::vector<Arrow> anchor_;
  std::vector<std::size_t> offset_;
  std::vector<Point> table_;
};

// G acting on its own arrows by left multiplication, anchored at the range.
FiniteGSet left_regular(const FiniteAmpleGroupoid& G);

// Orbit data of a G-set. Representatives are the minimal point of each orbit,
// in increasing order.
struct CoinvariantModule {
  std::vector<std::size_t> orbit_of;
  std::vector<Point> representatives;

  std::size_t orbit_count() const { return representatives.size(); }
  // Q: Z[points] -> Z[orbits].
  IntMatrix quotient_map() const;
  // S: Z[orbits] -> Z[points], orbit to its representative.
  IntMatrix section() const;
};

CoinvariantModule coinvariants(const FiniteGSet& X);

// Matrix of f -> (orbit of x -> sum over g in G_{anchor x} of f(g.x)).
IntMatrix epsilon_tilde(const FiniteGSet& X, const CoinvariantModule& M);

// Checks that the relations d_{g.x} - d_x present Z[X]_G as the free group on
// orbits, and for free actions that epsilon_tilde and the orbit section are
// mutually inverse on the quotient.
bool verify_coinvariants(const FiniteGSet& X, const CoinvariantModule& M);

// Sorted set of fixed-arity tuples of points, stored flat.
class TupleLevel {
 public:
  TupleLevel() = default;
  TupleLevel(std::size_t arity, std::vector<Point> flat, bool sorted_unique = false);

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return arity_ == 0 ? 0 : flat_.size() / arity_; }
  std::span<const Point> operator[](std::size_t i) const {
    return {flat_.data() + i * arity_, arity_};
  }
  std::optional<std::size_t> find(std::span<const Point> t) const;
  std::size_t index_of(std::span<const Point> t) const;  // throws if absent
  const std::vector<Point>& flat() const { return flat_; }

 private:
  std::size_t arity_ = 0;
  std::vector<Point> flat_;
};

// Semi-simplicial G-set whose level n consists of (n+1)-tuples of letters with
// a common anchor; faces delete a coordinate and G acts componentwise.
class TupleSpace {
 public:
  TupleSpace() = default;
  TupleSpace(FiniteGSet letters, std::vector<TupleLevel> levels);

  const FiniteGSet& letters() const { return letters_; }
  const FiniteAmpleGroupoid& groupoid() const { return letters_.groupoid(); }
  int top_degree() const { return static_cast<int>(levels_->size()) - 1; }
  const TupleLevel& level(int n) const { return levels_->at(n); }
  std::size_t size(int n) const { return levels_->at(n).size(); }

  Arrow anchor(int n, std::size_t i) const { return letters_.anchor(level(n)[i][0]); }
  std::size_t act(Arrow g, int n, std::size_t i) const;
  const CoinvariantModule& orbits(int n) const;
  FiniteGSet level_gset(int n) const;

  // Sum over i of (-1)^i times deletion of coordinate i, from level n to n-1.
  IntMatrix boundary(int n) const;
  // Boundary on coinvariants, computed on representatives.
  IntMatrix coinvariant_boundary(int n) const;

  // Basis names spell tuples through letter_name (letter index by default).
  ComplexPtr complex(const std::function<std::string(Point)>& letter_name = {}) const;
  ComplexPtr coinvariant_complex(const std::function<std::string(Point)>& letter_name = {}) const;

  std::string tuple_name(int n, std::size_t i,
                         const std::function<std::string(Point)>& letter_name) const;

  // Sub-space keeping only tuples accepted by keep; must be face-closed.
  TupleSpace filter(const std::function<bool(int, std::span<const Point>)>& keep) const;

 private:
  FiniteGSet letters_;
  std::shared_ptr<const std::vector<TupleLevel>> levels_ =
      std::make_shared<const std::vector<TupleLevel>>();
  std::shared_ptr<std::vector<std::optional<CoinvariantModule>>> orbit_cache_;
  std::shared_ptr<std::mutex> cache_mutex_;
};

// Matrix from Z[source] to Z[target] assembled from a formula that emits the
// image of each source tuple as signed target tuples (absent targets throw).
using TupleEmitter = std::function<void(std::span<const Point>, int coefficient)>;
using TupleFormula = std::function<void(std::span<const Point> in, const TupleEmitter& emit)>;
IntMatrix tuple_map_matrix(const TupleLevel& source, const TupleLevel& target,
                           const TupleFormula& formula);

// Componentwise letter map f0 between tuple spaces, e.g. nerve morphisms.
struct TupleMorphism {
  const TupleSpace* source = nullptr;
  const TupleSpace* target = nullptr;
  std::vector<Point> letter_map;

  IntMatrix matrix(int n) const;
  // Q_target * F * S_source.
  IntMatrix coinvariant_matrix(int n) const;
  // Equivariance on letters: f(g.x) = g.f(x).
  bool is_equivariant() const;
  // Every image tuple exists in the target (throws otherwise).
  void check_lands(int max_degree) const;
};

// Inclusion of the tuples of sub into super at level n.
IntMatrix inclusion_matrix(const TupleSpace& sub, const TupleSpace& super, int n);

// Q_n * X * S_m for an equivariant X: Z[source_m] -> Z[target_n].
IntMatrix to_coinvariants(const TupleSpace& source, int m, const TupleSpace& target, int n,
                          const IntMatrix& X);

}  // namespace ghom
