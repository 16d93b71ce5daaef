#include "ghom/matui.hpp"

#include <algorithm>
#include <atomic>

#include "ghom/errors.hpp"
#include "ghom/runtime.hpp"
#include "ghom/smith.hpp"

namespace ghom {

ArrowFunction indicator(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& set) {
  ArrowFunction f(G.size(), Integer(0));
  for (Arrow a : set) f.at(a) = Integer(1);
  return f;
}

ArrowFunction convolution(const FiniteAmpleGroupoid& G, const ArrowFunction& f, const ArrowFunction& g) {
  if (f.size() != G.size() || g.size() != G.size())
    throw DimensionMismatch("convolution: function size differs from arrow count");
  ArrowFunction out(G.size(), Integer(0));
  for (Arrow a = 0; a < G.size(); ++a) {
    if (f[a].is_zero()) continue;
    for (Arrow b : G.range_fiber(G.src(a)))
      if (!g[b].is_zero()) out[G.mul(a, b)] += f[a] * g[b];
  }
  return out;
}

ArrowFunction augmentation(const FiniteAmpleGroupoid& G, const ArrowFunction& f) {
  if (f.size() != G.size()) throw DimensionMismatch("augmentation: function size differs from arrow count");
  ArrowFunction out(G.size(), Integer(0));
  for (Arrow a = 0; a < G.size(); ++a) out[G.src(a)] += f[a];
  return out;
}

// ---------------------------------------------------------------- bar complex

ComposableTuples::ComposableTuples(FiniteAmpleGroupoid G, int max_degree) : G_(std::move(G)) {
  if (max_degree < 0) throw IndexOutOfRange("max_degree must be non-negative");
  levels_.emplace_back(1, std::vector<Point>(G_.units().begin(), G_.units().end()), true);
  // Level n extends each tuple of level n-1 by an arrow with range = source of its last entry.
  std::vector<Point> prev;
  for (Arrow a = 0; a < G_.size(); ++a) prev.push_back(a);
  if (max_degree >= 1) {
    check_cap(1, prev.size());
    levels_.emplace_back(1, prev, true);
  }
  for (int n = 2; n <= max_degree; ++n) {
    const std::size_t m = n - 1;
    const std::size_t count = prev.size() / m;
    std::size_t total = 0;
    for (std::size_t i = 0; i < count; ++i) total += G_.range_fiber(G_.src(prev[i * m + m - 1])).size();
    check_cap(n, total);
    std::vector<Point> next;
    next.reserve(total * n);
    for (std::size_t i = 0; i < count; ++i)
      for (Arrow b : G_.range_fiber(G_.src(prev[i * m + m - 1]))) {
        next.insert(next.end(), prev.begin() + i * m, prev.begin() + (i + 1) * m);
        next.push_back(b);
      }
    // Extending in lexicographic order of prefixes and sorted fibers keeps order.
    levels_.emplace_back(n, next, true);
    prev = std::move(next);
  }
}

std::vector<Point> ComposableTuples::face(int n, std::span<const Point> t, int i) const {
  if (n == 1) return {i == 0 ? G_.src(t[0]) : G_.rng(t[0])};
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) {
    if (i == 0 && k == 0) continue;
    if (i == n && k == n - 1) continue;
    if (i > 0 && i < n && k == i - 1) {
      out.push_back(G_.mul(t[k], t[k + 1]));
      ++k;
      continue;
    }
    out.push_back(t[k]);
  }
  return out;
}

IntMatrix ComposableTuples::boundary(int n) const {
  const auto& src = level(n);
  const auto& dst = level(n - 1);
  std::vector<IntMatrix::Column> cols(src.size());
  parallel_for(src.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j)
      for (int i = 0; i <= n; ++i)
        cols[j].push_back({dst.index_of(face(n, src[j], i)), Integer(i % 2 == 0 ? 1 : -1)});
  });
  return IntMatrix::from_columns(dst.size(), std::move(cols));
}

ComplexPtr matui_complex(const FiniteAmpleGroupoid& G, int max_degree) {
  ComposableTuples bg(G, max_degree);
  std::vector<BasisNames> bases;
  std::vector<IntMatrix> bd;
  for (int n = 0; n <= max_degree; ++n) {
    const TupleLevel* L = &bg.level(n);
    bases.emplace_back(L->size(), [G, L = *L, n](std::size_t i) {
      if (n == 0) return G.id(L[i][0]);
      std::string s = "(";
      for (std::size_t k = 0; k < L.arity(); ++k) s += (k ? "," : "") + G.id(L[i][k]);
      return s + ")";
    });
    if (n > 0) bd.push_back(bg.boundary(n));
  }
  return std::make_shared<const IntegerChainComplex>(0, std::move(bases), std::move(bd));
}

HomologyGroup homology_of_groupoid(const FiniteAmpleGroupoid& G, int n) {
  if (n < 0) return {};
  return homology(*matui_complex(G, n + 1), n);
}

// ---------------------------------------------------------------- EG

namespace {

// (n+1)-tuples from the range fiber of each unit, depth-first with pruning.
std::vector<TupleLevel> enumerate_eg(const FiniteAmpleGroupoid& G, int max_degree,
                                     const std::vector<bool>* K) {
  auto compatible = [&](std::span<const Point> prefix, Arrow b) {
    if (!K) return true;
    for (Point a : prefix)
      if (!(*K)[G.mul(G.inv(a), b)] || !(*K)[G.mul(G.inv(b), a)]) return false;
    return true;
  };
  std::vector<TupleLevel> levels;
  std::vector<Point> all(G.size());
  for (Arrow a = 0; a < G.size(); ++a) all[a] = a;
  check_cap(0, all.size());
  levels.emplace_back(1, all, true);
  for (int n = 1; n <= max_degree; ++n) {
    const auto& prev = levels.back();
    std::vector<std::vector<Point>> parts(prev.size() > 0 ? prev.size() : 0);
    std::atomic<std::size_t> total{0};
    parallel_for(prev.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        auto t = prev[i];
        auto& out = parts[i];
        for (Arrow b : G.range_fiber(G.rng(t[0])))
          if (compatible(t, b)) {
            out.insert(out.end(), t.begin(), t.end());
            out.push_back(b);
          }
        if (total.fetch_add(out.size() / (n + 1)) + out.size() / (n + 1) > enumeration_cap())
          throw EnumerationCapExceeded(n, total.load(), enumeration_cap());
      }
    });
    std::vector<Point> flat;
    flat.reserve(total.load() * (n + 1));
    for (auto& p : parts) flat.insert(flat.end(), p.begin(), p.end());
    levels.emplace_back(n + 1, std::move(flat), true);
  }
  return levels;
}

}  // namespace

TupleSpace eg_space(const FiniteAmpleGroupoid& G, int max_degree) {
  return TupleSpace(left_regular(G), enumerate_eg(G, max_degree, nullptr));
}

TupleSpace eg_space(const FiniteAmpleGroupoid& G, int max_degree, const std::vector<bool>& K) {
  if (K.size() != G.size()) throw DimensionMismatch("scale mask size differs from arrow count");
  return TupleSpace(left_regular(G), enumerate_eg(G, max_degree, &K));
}

EgComplex eg_complex(const FiniteAmpleGroupoid& G, int max_degree) {
  EgComplex out{eg_space(G, max_degree), nullptr, nullptr};
  auto name = [G](Point a) { return G.id(a); };
  out.chains = out.space.complex(name);
  out.coinvariants = out.space.coinvariant_complex(name);
  return out;
}

BarIsomorphism bar_isomorphism(const FiniteAmpleGroupoid& G, int max_degree) {
  ComposableTuples bg(G, max_degree);
  TupleSpace eg = eg_space(G, max_degree);
  BarIsomorphism out;
  for (int n = 0; n <= max_degree; ++n) {
    const auto& B = bg.level(n);
    const auto& E = eg.level(n);
    const auto& orb = eg.orbits(n);
    std::vector<std::size_t> a_img(B.size()), b_img(orb.orbit_count());
    for (std::size_t j = 0; j < B.size(); ++j) {
      auto t = B[j];
      std::vector<Point> gamma;
      if (n == 0) {
        gamma = {t[0]};
      } else {
        gamma.push_back(G.rng(t[0]));
        Arrow acc = t[0];
        gamma.push_back(acc);
        for (int k = 1; k < n; ++k) gamma.push_back(acc = G.mul(acc, t[k]));
      }
      a_img[j] = orb.orbit_of[E.index_of(gamma)];
    }
    for (std::size_t k = 0; k < orb.orbit_count(); ++k) {
      auto gamma = E[orb.representatives[k]];
      std::vector<Point> t;
      if (n == 0) {
        t = {G.src(gamma[0])};
      } else {
        for (int i = 1; i <= n; ++i) t.push_back(G.mul(G.inv(gamma[i - 1]), gamma[i]));
      }
      b_img[k] = B.index_of(t);
    }
    out.to_eg.push_back(IntMatrix::from_function(orb.orbit_count(), a_img));
    out.from_eg.push_back(IntMatrix::from_function(B.size(), b_img));
  }
  out.inverse = true;
  for (int n = 0; n <= max_degree; ++n)
    if (!(out.to_eg[n] * out.from_eg[n]).is_identity() || !(out.from_eg[n] * out.to_eg[n]).is_identity())
      out.inverse = false;
  out.chain_maps = true;
  for (int n = 1; n <= max_degree; ++n) {
    IntMatrix dB = bg.boundary(n);
    IntMatrix dE = eg.coinvariant_boundary(n);
    if (!(dE * out.to_eg[n] == out.to_eg[n - 1] * dB)) out.chain_maps = false;
    if (!(dB * out.from_eg[n] == out.from_eg[n - 1] * dE)) out.chain_maps = false;
  }
  return out;
}

// ---------------------------------------------------------------- resolution

ComplexPtr augmented_eg_complex(const TupleSpace& EG) {
  const auto& G = EG.groupoid();
  std::vector<BasisNames> bases;
  std::vector<IntMatrix> bd;
  std::vector<std::string> unit_names;
  for (Arrow x : G.units()) unit_names.push_back(G.id(x));
  bases.emplace_back(unit_names);
  std::vector<std::size_t> r(G.size());
  for (Arrow a = 0; a < G.size(); ++a) r[a] = G.unit_ordinal(G.rng(a));
  bd.push_back(IntMatrix::from_function(G.unit_count(), r));
  auto name = [G](Point a) { return G.id(a); };
  for (int n = 0; n <= EG.top_degree(); ++n) {
    bases.emplace_back(EG.size(n), [EG, n, name](std::size_t i) { return EG.tuple_name(n, i, name); });
    if (n > 0) bd.push_back(EG.boundary(n));
  }
  return std::make_shared<const IntegerChainComplex>(-1, std::move(bases), std::move(bd));
}

ChainMapCertificate resolution_contraction(const FiniteAmpleGroupoid& G, int max_degree) {
  TupleSpace EG = eg_space(G, max_degree + 1);
  ComplexPtr C = augmented_eg_complex(EG);
  ChainMapCertificate cert;
  cert.source = cert.target = C;
  cert.claimed_identity = "dh + hd = id";
  cert.first_degree = -1;
  cert.last_degree = max_degree;
  std::vector<IntMatrix::Column> cols;
  for (Arrow x : G.units()) cols.push_back({{EG.level(0).index_of(std::vector<Point>{x}), Integer(1)}});
  cert.homotopy_matrices[-1] = IntMatrix::from_columns(EG.size(0), std::move(cols));
  for (int n = -1; n <= max_degree; ++n) cert.map_matrices[n] = IntMatrix::identity(C->dim(n));
  for (int n = 0; n <= max_degree; ++n)
    cert.homotopy_matrices[n] =
        tuple_map_matrix(EG.level(n), EG.level(n + 1), [&](std::span<const Point> t, const TupleEmitter& emit) {
          std::vector<Point> img{G.rng(t[0])};
          img.insert(img.end(), t.begin(), t.end());
          emit(img, 1);
        });
  return cert;
}

// ---------------------------------------------------------------- tensor shift

TensorShiftResult tensor_shift_check(const FiniteAmpleGroupoid& G, int n) {
  if (n < -1) throw IndexOutOfRange("tensor shift degree must be >= -1");
  TensorShiftResult res;
  TupleSpace EG = eg_space(G, n + 1);
  // Degree -1 is Z[G^0]: 1-tuples of units anchored at themselves.
  std::vector<std::vector<Point>> taus;
  if (n == -1) {
    for (Arrow x : G.units()) taus.push_back({x});
  } else {
    for (std::size_t i = 0; i < EG.size(n); ++i) taus.emplace_back(EG.level(n)[i].begin(), EG.level(n)[i].end());
  }
  auto anchor = [&](const std::vector<Point>& t) { return n == -1 ? t[0] : G.rng(t[0]); };
  const std::size_t T = taus.size();
  const std::size_t rows = G.size() * T;
  check_cap(n, rows);
  res.target_rank = EG.size(n + 1);
  // Relations d_a d_u (x) t - d_a (x) d_u t for each unit u; only pairs with
  // s(a) != anchor(t) give nonzero relations.
  std::vector<IntMatrix::Column> rel;
  for (Arrow a = 0; a < G.size(); ++a)
    for (std::size_t t = 0; t < T; ++t) {
      const Arrow u = G.src(a), v = anchor(taus[t]);
      if (u == v) continue;
      rel.push_back({{a * T + t, Integer(1)}});
      rel.push_back({{a * T + t, Integer(-1)}});
    }
  IntMatrix R = IntMatrix::from_columns(rows, std::move(rel));
  auto factors = invariant_factors(R);
  for (const auto& f : factors)
    if (!f.is_unit()) {
      res.detail = "tensor product has torsion";
      return res;
    }
  res.tensor_rank = rows - factors.size();
  std::vector<IntMatrix::Column> tcols(rows);
  std::vector<std::size_t> hit(res.target_rank, 0);
  for (Arrow a = 0; a < G.size(); ++a)
    for (std::size_t t = 0; t < T; ++t) {
      if (G.src(a) != anchor(taus[t])) continue;
      std::vector<Point> img{a};
      if (n >= 0)
        for (Point g : taus[t]) img.push_back(G.mul(a, g));
      const std::size_t k = EG.level(n + 1).index_of(img);
      tcols[a * T + t].push_back({k, Integer(1)});
      ++hit[k];
    }
  IntMatrix Tm = IntMatrix::from_columns(res.target_rank, std::move(tcols));
  if (!(Tm * R).is_zero()) {
    res.detail = "shift map does not vanish on relations";
    return res;
  }
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (hit[k] != 1) {
      res.detail = "shift map is not a bijection on bases at " + EG.tuple_name(n + 1, k, [&](Point p) { return G.id(p); });
      return res;
    }
  res.ok = res.tensor_rank == res.target_rank;
  if (!res.ok) res.detail = "rank mismatch";
  return res;
}

}  // namespace ghom
