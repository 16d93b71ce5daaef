#include "ghom/uf.hpp"

#include "ghom/errors.hpp"
#include "ghom/matui.hpp"
#include "ghom/runtime.hpp"

namespace ghom {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> points, std::vector<std::vector<mpq_class>> dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  const std::size_t n = points_.size();
  if (n == 0) throw MalformedSpec("metric space has no points");
  for (std::size_t i = 0; i < n; ++i) {
    if (points_[i].empty() || points_[i].find_first_of("(),") != std::string::npos)
      throw MalformedSpec("point name '" + points_[i] + "' must be non-empty without parentheses or commas");
    for (std::size_t j = 0; j < i; ++j)
      if (points_[i] == points_[j]) throw MalformedSpec("duplicate point '" + points_[i] + "'");
  }
  if (dist_.size() != n) throw MalformedSpec("distance matrix has " + std::to_string(dist_.size()) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i].size() != n) throw MalformedSpec("distance row " + points_[i] + " has wrong length");
    for (auto& v : dist_[i]) v.canonicalize();
  }
  auto pair = [&](std::size_t a, std::size_t b) { return points_[a] + "," + points_[b]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && dist_[i][j] != 0) throw MalformedSpec("nonzero diagonal at " + points_[i]);
      if (i != j && dist_[i][j] <= 0) throw MalformedSpec("non-positive distance between " + pair(i, j));
      if (dist_[i][j] != dist_[j][i]) throw MalformedSpec("asymmetric distance between " + pair(i, j));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist_[i][k] > dist_[i][j] + dist_[j][k])
          throw MalformedSpec("triangle inequality fails for " + points_[i] + ", " + points_[j] + ", " + points_[k]);
}

mpq_class FiniteMetricSpace::diameter(std::span<const std::size_t> tuple) const {
  mpq_class d = 0;
  for (std::size_t a : tuple)
    for (std::size_t b : tuple)
      if (dist_[a][b] > d) d = dist_[a][b];
  return d;
}

mpq_class UfChain::propagation(const FiniteMetricSpace& X) const {
  mpq_class p = 0;
  for (const auto& [t, c] : coefficients) {
    mpq_class d = X.diameter(t);
    if (d > p) p = d;
  }
  return p;
}

UfChain uf_boundary(const UfChain& c) {
  if (c.degree == 0) throw DegreeZero("the boundary of a degree 0 chain is not defined");
  UfChain out{c.degree - 1, {}};
  for (const auto& [t, v] : c.coefficients)
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::vector<std::size_t> face(t);
      face.erase(face.begin() + i);
      auto& slot = out.coefficients[face];
      slot += i % 2 == 0 ? v : -v;
    }
  std::erase_if(out.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::size_t uf_index(std::size_t points, std::span<const std::size_t> tuple) {
  std::size_t k = 0;
  for (std::size_t x : tuple) {
    if (x >= points) throw IndexOutOfRange("point index out of range");
    k = k * points + x;
  }
  return k;
}

std::vector<std::size_t> uf_tuple(std::size_t points, int n, std::size_t index) {
  std::vector<std::size_t> t(n + 1);
  for (int i = n; i >= 0; --i) {
    t[i] = index % points;
    index /= points;
  }
  return t;
}

namespace {

std::size_t power(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ComplexPtr uf_complex(const FiniteMetricSpace& X, int max_degree) {
  if (max_degree < 0) throw IndexOutOfRange("max_degree must be non-negative");
  const std::size_t p = X.size();
  std::vector<BasisNames> bases;
  std::vector<IntMatrix> boundaries;
  for (int n = 0; n <= max_degree; ++n) {
    const std::size_t count = power(p, n + 1);
    check_cap(n, count);
    bases.emplace_back(count, [&X, p, n](std::size_t k) {
      std::string s = "(";
      auto t = uf_tuple(p, n, k);
      for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + X.points()[t[i]];
      return s + ")";
    });
    if (n == 0) continue;
    std::vector<IntMatrix::Column> cols(count);
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        auto t = uf_tuple(p, n, k);
        for (std::size_t i = 0; i < t.size(); ++i) {
          std::vector<std::size_t> face(t);
          face.erase(face.begin() + i);
          cols[k].push_back({uf_index(p, face), Integer(i % 2 == 0 ? 1 : -1)});
        }
      }
    });
    boundaries.push_back(IntMatrix::from_columns(power(p, n), std::move(cols)));
  }
  return std::make_shared<const IntegerChainComplex>(0, std::move(bases), std::move(boundaries));
}

std::vector<Integer> to_vector(const FiniteMetricSpace& X, const UfChain& c) {
  std::vector<Integer> v(power(X.size(), c.degree + 1), Integer(0));
  for (const auto& [t, a] : c.coefficients) {
    if (t.size() != static_cast<std::size_t>(c.degree + 1)) throw DimensionMismatch("chain tuple has the wrong length");
    v[uf_index(X.size(), t)] += a;
  }
  return v;
}

UfChain from_vector(int degree, std::size_t points, const std::vector<Integer>& v) {
  UfChain c{degree, {}};
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) c.coefficients[uf_tuple(points, degree, k)] = v[k];
  return c;
}

UfTranslation uf_translation(const FiniteMetricSpace& X, int max_degree) {
  UfTranslation T;
  T.space = X;
  T.groupoid = pair_groupoid(X.points());
  const auto& G = T.groupoid;
  const std::size_t p = X.size();
  T.pair_arrow.assign(p, std::vector<Arrow>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      T.pair_arrow[i][j] = G.arrow("(" + X.points()[i] + "," + X.points()[j] + ")");
  std::vector<std::size_t> point_of(G.size());
  for (std::size_t i = 0; i < p; ++i) point_of[T.pair_arrow[i][i]] = i;

  T.eg = eg_space(G, max_degree);
  T.uf = uf_complex(X, max_degree);
  T.coinvariants = T.eg.coinvariant_complex();
  for (int n = 0; n <= max_degree; ++n) {
    const auto& orb = T.eg.orbits(n);
    const auto& level = T.eg.level(n);
    std::vector<std::size_t> images;
    for (std::size_t r : orb.representatives) {
      auto t = level[r];
      std::vector<std::size_t> x;
      for (Point g : t) x.push_back(point_of[G.src(g)]);
      images.push_back(uf_index(p, x));
    }
    T.alpha.push_back(IntMatrix::from_function(power(p, n + 1), images));
    std::vector<std::size_t> classes(power(p, n + 1));
    for (std::size_t k = 0; k < classes.size(); ++k) {
      auto x = uf_tuple(p, n, k);
      std::vector<Point> t;
      for (std::size_t xi : x) t.push_back(T.pair_arrow[x[0]][xi]);
      classes[k] = orb.orbit_of[level.index_of(t)];
    }
    T.beta.push_back(IntMatrix::from_function(orb.orbit_count(), classes));
  }
  return T;
}

UfTranslationCheck verify_translation(const UfTranslation& T) {
  UfTranslationCheck out{true, true};
  const int top = static_cast<int>(T.alpha.size()) - 1;
  for (int n = 0; n <= top; ++n) {
    out.inverse = out.inverse && (T.alpha[n] * T.beta[n]).is_identity() && (T.beta[n] * T.alpha[n]).is_identity();
    if (n == 0) continue;
    out.chain_maps = out.chain_maps && T.uf->boundary(n) * T.alpha[n] == T.alpha[n - 1] * T.coinvariants->boundary(n) &&
                     T.coinvariants->boundary(n) * T.beta[n] == T.beta[n - 1] * T.uf->boundary(n);
  }
  return out;
}

namespace {

std::vector<Integer> mat_vec(const IntMatrix& M, const std::vector<Integer>& v) {
  if (v.size() != M.cols()) throw DimensionMismatch("vector length does not match the matrix");
  std::vector<Integer> out(M.rows(), Integer(0));
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) M.for_each_in_column(j, [&](std::size_t i, const Integer& a) { out[i] += a * v[j]; });
  return out;
}

}  // namespace

UfChain alpha(const UfTranslation& T, int n, const std::vector<Integer>& coinvariant_class) {
  return from_vector(n, T.space.size(), mat_vec(T.alpha.at(n), coinvariant_class));
}

std::vector<Integer> beta(const UfTranslation& T, const UfChain& c) {
  return mat_vec(T.beta.at(c.degree), to_vector(T.space, c));
}

HomologyGroup uf_homology(const FiniteMetricSpace& X, int n) {
  if (n < 0) return {};
  return homology(*uf_complex(X, n + 1), n);
}

}  // namespace ghom
