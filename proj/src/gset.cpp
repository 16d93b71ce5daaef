#include "ghom/gset.hpp"

#include <algorithm>

#include "ghom/errors.hpp"
#include "ghom/runtime.hpp"
#include "ghom/smith.hpp"

namespace ghom {

FiniteGSet::FiniteGSet(FiniteAmpleGroupoid G, std::vector<Arrow> anchors,
                       const std::function<Point(Arrow, Point)>& act)
    : G_(std::move(G)), anchor_(std::move(anchors)) {
  const std::size_t P = anchor_.size();
  offset_.resize(P + 1);
  std::size_t total = 0;
  for (Point x = 0; x < P; ++x) {
    if (anchor_[x] >= G_.size() || !G_.is_unit(anchor_[x]))
      throw MalformedSpec("G-set anchor of point " + std::to_string(x) + " is not a unit");
    offset_[x] = total;
    total += G_.source_fiber(anchor_[x]).size();
  }
  offset_[P] = total;
  table_.resize(total);
  parallel_for(P, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x)
      for (Arrow g : G_.source_fiber(anchor_[x])) {
        const Point y = act(g, static_cast<Point>(x));
        if (y >= P || anchor_[y] != G_.rng(g))
          throw MalformedSpec("G-set action of " + G_.id(g) + " on point " + std::to_string(x) +
                              " lands outside the fiber of its range");
        table_[offset_[x] + G_.source_position(g)] = y;
      }
  });
  for (Point x = 0; x < P; ++x) {
    if (this->act(anchor_[x], x) != x)
      throw MalformedSpec("G-set: unit does not fix point " + std::to_string(x));
    for (Arrow g : G_.source_fiber(anchor_[x])) {
      const Point gx = this->act(g, x);
      for (Arrow h : G_.source_fiber(G_.rng(g)))
        if (this->act(G_.mul(h, g), x) != this->act(h, gx))
          throw MalformedSpec("G-set: action not compatible with composition at point " +
                              std::to_string(x));
    }
  }
}

bool FiniteGSet::is_free() const {
  for (Point x = 0; x < size(); ++x)
    for (Arrow g : G_.source_fiber(anchor_[x]))
      if (!G_.is_unit(g) && act(g, x) == x) return false;
  return true;
}

FiniteGSet left_regular(const FiniteAmpleGroupoid& G) {
  std::vector<Arrow> anchors(G.size());
  for (Arrow a = 0; a < G.size(); ++a) anchors[a] = G.rng(a);
  return FiniteGSet(G, std::move(anchors), [&](Arrow g, Point x) { return G.mul(g, x); });
}

// ---------------------------------------------------------------- coinvariants

IntMatrix CoinvariantModule::quotient_map() const {
  std::vector<std::size_t> images(orbit_of.begin(), orbit_of.end());
  return IntMatrix::from_function(orbit_count(), images);
}

IntMatrix CoinvariantModule::section() const {
  std::vector<std::size_t> images(representatives.begin(), representatives.end());
  return IntMatrix::from_function(orbit_of.size(), images);
}

namespace {

CoinvariantModule orbits_by(std::size_t P, const std::function<Arrow(Point)>& anchor,
                            const FiniteAmpleGroupoid& G,
                            const std::function<std::size_t(Arrow, Point)>& act) {
  CoinvariantModule M;
  M.orbit_of.assign(P, SIZE_MAX);
  for (Point x = 0; x < P; ++x) {
    if (M.orbit_of[x] != SIZE_MAX) continue;
    const std::size_t k = M.representatives.size();
    M.representatives.push_back(x);
    for (Arrow g : G.source_fiber(anchor(x))) M.orbit_of[act(g, x)] = k;
  }
  return M;
}

}  // namespace

CoinvariantModule coinvariants(const FiniteGSet& X) {
  return orbits_by(
      X.size(), [&](Point x) { return X.anchor(x); }, X.groupoid(),
      [&](Arrow g, Point x) { return X.act(g, x); });
}

IntMatrix epsilon_tilde(const FiniteGSet& X, const CoinvariantModule& M) {
  const auto& G = X.groupoid();
  std::vector<IntMatrix::Column> cols(X.size());
  for (std::size_t k = 0; k < M.orbit_count(); ++k) {
    const Point x = M.representatives[k];
    for (Arrow g : G.source_fiber(X.anchor(x))) cols[X.act(g, x)].push_back({k, Integer(1)});
  }
  return IntMatrix::from_columns(M.orbit_count(), std::move(cols));
}

bool verify_coinvariants(const FiniteGSet& X, const CoinvariantModule& M) {
  const auto& G = X.groupoid();
  const std::size_t P = X.size();
  std::vector<IntMatrix::Column> rel;
  for (Point x = 0; x < P; ++x)
    for (Arrow g : G.source_fiber(X.anchor(x))) {
      const Point y = X.act(g, x);
      if (y != x) rel.push_back({{y, Integer(1)}, {x, Integer(-1)}});
    }
  IntMatrix R = IntMatrix::from_columns(P, std::move(rel));
  IntMatrix Q = M.quotient_map();
  if (!(Q * R).is_zero()) return false;
  const auto factors = invariant_factors(R);
  if (factors.size() != P - M.orbit_count()) return false;
  for (const auto& f : factors)
    if (!f.is_unit()) return false;
  IntMatrix S = M.section();
  if (!(Q * S).is_identity()) return false;
  if (!X.is_free()) return true;
  IntMatrix E = epsilon_tilde(X, M);
  return (E * S).is_identity() && Q * S * E == Q;
}

// ---------------------------------------------------------------- tuple levels

namespace {

struct TupleLess {
  std::size_t arity;
  bool operator()(std::span<const Point> a, std::span<const Point> b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

}  // namespace

TupleLevel::TupleLevel(std::size_t arity, std::vector<Point> flat, bool sorted_unique)
    : arity_(arity), flat_(std::move(flat)) {
  if (arity_ == 0) throw DimensionMismatch("tuple arity must be positive");
  if (flat_.size() % arity_ != 0) throw DimensionMismatch("flat tuple storage not a multiple of arity");
  if (sorted_unique) return;
  const std::size_t n = flat_.size() / arity_;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto at = [&](std::size_t i) { return std::span<const Point>(flat_.data() + i * arity_, arity_); };
  TupleLess less{arity_};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return less(at(a), at(b)); });
  std::vector<Point> out;
  out.reserve(flat_.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto t = at(order[k]);
    if (k > 0 && std::equal(t.begin(), t.end(), at(order[k - 1]).begin())) continue;
    out.insert(out.end(), t.begin(), t.end());
  }
  flat_ = std::move(out);
}

std::optional<std::size_t> TupleLevel::find(std::span<const Point> t) const {
  if (t.size() != arity_) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = (*this)[mid];
    auto c = std::lexicographical_compare_three_way(m.begin(), m.end(), t.begin(), t.end());
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

std::size_t TupleLevel::index_of(std::span<const Point> t) const {
  auto k = find(t);
  if (!k) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    throw NotAComplex("tuple " + s + ") is missing from its level");
  }
  return *k;
}

// ---------------------------------------------------------------- tuple spaces

TupleSpace::TupleSpace(FiniteGSet letters, std::vector<TupleLevel> levels)
    : letters_(std::move(letters)),
      levels_(std::make_shared<const std::vector<TupleLevel>>(std::move(levels))),
      orbit_cache_(std::make_shared<std::vector<std::optional<CoinvariantModule>>>(levels_->size())),
      cache_mutex_(std::make_shared<std::mutex>()) {
  for (std::size_t n = 0; n < levels_->size(); ++n) {
    const auto& L = (*levels_)[n];
    if (L.size() > 0 && L.arity() != n + 1)
      throw DimensionMismatch("tuple level " + std::to_string(n) + " has wrong arity");
    for (std::size_t i = 0; i < L.size(); ++i) {
      auto t = L[i];
      for (Point p : t)
        if (p >= letters_.size() || letters_.anchor(p) != letters_.anchor(t[0]))
          throw MalformedSpec("tuple in level " + std::to_string(n) + " has letters with different anchors");
    }
  }
}

std::size_t TupleSpace::act(Arrow g, int n, std::size_t i) const {
  auto t = level(n)[i];
  std::vector<Point> img(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) img[k] = letters_.act(g, t[k]);
  auto j = level(n).find(img);
  if (!j) throw MalformedSpec("tuple level " + std::to_string(n) + " is not invariant under the action");
  return *j;
}

const CoinvariantModule& TupleSpace::orbits(int n) const {
  std::lock_guard<std::mutex> lock(*cache_mutex_);
  auto& slot = orbit_cache_->at(n);
  if (!slot) {
    const auto& L = level(n);
    slot = orbits_by(
        L.size(), [&](Point x) { return anchor(n, x); }, groupoid(),
        [&](Arrow g, Point x) { return act(g, n, x); });
  }
  return *slot;
}

FiniteGSet TupleSpace::level_gset(int n) const {
  std::vector<Arrow> anchors(size(n));
  for (std::size_t i = 0; i < anchors.size(); ++i) anchors[i] = anchor(n, i);
  return FiniteGSet(groupoid(), std::move(anchors),
                    [&](Arrow g, Point x) { return static_cast<Point>(act(g, n, x)); });
}

namespace {

// Alternating sum of coordinate deletions for one tuple.
template <class Sink>
void emit_faces(std::span<const Point> t, Sink&& sink) {
  std::vector<Point> face(t.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t w = 0;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (k != i) face[w++] = t[k];
    sink(std::span<const Point>(face), (i % 2 == 0) ? 1 : -1);
  }
}

}  // namespace

IntMatrix TupleSpace::boundary(int n) const {
  if (n <= 0 || n > top_degree()) throw IndexOutOfRange("tuple boundary degree out of range");
  const auto& src = level(n);
  const auto& dst = level(n - 1);
  std::vector<IntMatrix::Column> cols(src.size());
  parallel_for(src.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j)
      emit_faces(src[j], [&](std::span<const Point> f, int sgn) {
        cols[j].push_back({dst.index_of(f), Integer(sgn)});
      });
  });
  return IntMatrix::from_columns(dst.size(), std::move(cols));
}

IntMatrix TupleSpace::coinvariant_boundary(int n) const {
  const auto& Mn = orbits(n);
  const auto& Mm = orbits(n - 1);
  const auto& src = level(n);
  const auto& dst = level(n - 1);
  std::vector<IntMatrix::Column> cols(Mn.orbit_count());
  parallel_for(cols.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j)
      emit_faces(src[Mn.representatives[j]], [&](std::span<const Point> f, int sgn) {
        cols[j].push_back({Mm.orbit_of[dst.index_of(f)], Integer(sgn)});
      });
  });
  return IntMatrix::from_columns(Mm.orbit_count(), std::move(cols));
}

std::string TupleSpace::tuple_name(int n, std::size_t i,
                                   const std::function<std::string(Point)>& letter_name) const {
  auto t = level(n)[i];
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ",";
    s += letter_name ? letter_name(t[k]) : std::to_string(t[k]);
  }
  return s + ")";
}

ComplexPtr TupleSpace::complex(const std::function<std::string(Point)>& letter_name) const {
  std::vector<BasisNames> bases;
  std::vector<IntMatrix> bd;
  for (int n = 0; n <= top_degree(); ++n) {
    bases.emplace_back(size(n), [self = *this, n, letter_name](std::size_t i) {
      return self.tuple_name(n, i, letter_name);
    });
    if (n > 0) bd.push_back(boundary(n));
  }
  return std::make_shared<const IntegerChainComplex>(0, std::move(bases), std::move(bd));
}

ComplexPtr TupleSpace::coinvariant_complex(const std::function<std::string(Point)>& letter_name) const {
  std::vector<BasisNames> bases;
  std::vector<IntMatrix> bd;
  for (int n = 0; n <= top_degree(); ++n) {
    bases.emplace_back(orbits(n).orbit_count(), [self = *this, n, letter_name](std::size_t k) {
      return "[" + self.tuple_name(n, self.orbits(n).representatives[k], letter_name) + "]";
    });
    if (n > 0) bd.push_back(coinvariant_boundary(n));
  }
  return std::make_shared<const IntegerChainComplex>(0, std::move(bases), std::move(bd));
}

TupleSpace TupleSpace::filter(const std::function<bool(int, std::span<const Point>)>& keep) const {
  std::vector<TupleLevel> out;
  for (int n = 0; n <= top_degree(); ++n) {
    const auto& L = level(n);
    std::vector<Point> flat;
    for (std::size_t i = 0; i < L.size(); ++i)
      if (keep(n, L[i])) flat.insert(flat.end(), L[i].begin(), L[i].end());
    out.emplace_back(static_cast<std::size_t>(n + 1), std::move(flat), true);
  }
  return TupleSpace(letters_, std::move(out));
}

IntMatrix tuple_map_matrix(const TupleLevel& source, const TupleLevel& target,
                           const TupleFormula& formula) {
  std::vector<IntMatrix::Column> cols(source.size());
  parallel_for(source.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j)
      formula(source[j], [&](std::span<const Point> t, int c) {
        if (c != 0) cols[j].push_back({target.index_of(t), Integer(c)});
      });
  });
  return IntMatrix::from_columns(target.size(), std::move(cols));
}

// ---------------------------------------------------------------- morphisms

IntMatrix TupleMorphism::matrix(int n) const {
  return tuple_map_matrix(source->level(n), target->level(n),
                          [&](std::span<const Point> t, const TupleEmitter& emit) {
                            std::vector<Point> img(t.size());
                            for (std::size_t k = 0; k < t.size(); ++k) img[k] = letter_map[t[k]];
                            emit(img, 1);
                          });
}

IntMatrix TupleMorphism::coinvariant_matrix(int n) const {
  return to_coinvariants(*source, n, *target, n, matrix(n));
}

bool TupleMorphism::is_equivariant() const {
  const auto& X = source->letters();
  const auto& Y = target->letters();
  if (letter_map.size() != X.size()) return false;
  for (Point x = 0; x < X.size(); ++x) {
    if (Y.anchor(letter_map[x]) != X.anchor(x)) return false;
    for (Arrow g : X.groupoid().source_fiber(X.anchor(x)))
      if (letter_map[X.act(g, x)] != Y.act(g, letter_map[x])) return false;
  }
  return true;
}

void TupleMorphism::check_lands(int max_degree) const {
  for (int n = 0; n <= max_degree; ++n) (void)matrix(n);
}

IntMatrix inclusion_matrix(const TupleSpace& sub, const TupleSpace& super, int n) {
  return tuple_map_matrix(sub.level(n), super.level(n),
                          [](std::span<const Point> t, const TupleEmitter& emit) { emit(t, 1); });
}

IntMatrix to_coinvariants(const TupleSpace& source, int m, const TupleSpace& target, int n,
                          const IntMatrix& X) {
  const auto& Ms = source.orbits(m);
  const auto& Mt = target.orbits(n);
  std::vector<std::size_t> reps(Ms.representatives.begin(), Ms.representatives.end());
  IntMatrix XS = X.select_columns(reps);
  std::vector<IntMatrix::Column> cols(XS.cols());
  for (std::size_t j = 0; j < XS.cols(); ++j)
    XS.for_each_in_column(j, [&](std::size_t i, const Integer& v) {
      cols[j].push_back({Mt.orbit_of[i], v});
    });
  return IntMatrix::from_columns(Mt.orbit_count(), std::move(cols));
}

}  // namespace ghom
