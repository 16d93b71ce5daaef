#include "ghom/colouring.hpp"

#include <algorithm>
#include <numeric>

#include "ghom/errors.hpp"
#include "ghom/runtime.hpp"

namespace ghom {

Colouring::Colouring(FiniteAmpleGroupoid G, std::vector<Subgroupoid> parts)
    : G_(std::move(G)), parts_(std::move(parts)) {
  if (parts_.empty()) throw MalformedSpec("colouring has no parts");
  std::vector<bool> covered(G_.size(), false);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (!parts_[i].parent().same_as(G_))
      throw MalformedSpec("colouring part " + std::to_string(i) + " belongs to a different groupoid");
    for (Arrow x : parts_[i].unit_space()) covered[x] = true;
  }
  for (Arrow x : G_.units())
    if (!covered[x]) throw MalformedSpec("colouring does not cover unit " + G_.id(x));
}

Colouring colouring_from_generators(const FiniteAmpleGroupoid& G,
                                    const std::vector<std::vector<Arrow>>& generators) {
  std::vector<Subgroupoid> parts;
  for (const auto& S : generators) parts.push_back(generated_subgroupoid(G, S));
  return Colouring(G, std::move(parts));
}

// ---------------------------------------------------------------- cover

std::vector<Point> Cover::containing(Arrow k) const {
  std::vector<Point> out;
  for (const auto& col : element_of)
    if (col[k] != kNoPoint) out.push_back(col[k]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Cover::name(const FiniteAmpleGroupoid& G, Point U) const {
  const auto& e = elements[U];
  std::string s = "{";
  for (std::size_t k = 0; k < e.arrows.size(); ++k) s += (k ? "," : "") + G.id(e.arrows[k]);
  return s + "}#" + std::to_string(e.colour);
}

Cover cover(const Colouring& C) {
  const auto& G = C.groupoid();
  std::vector<CoverElement> raw;
  std::vector<std::vector<std::size_t>> raw_of(C.colour_count(), std::vector<std::size_t>(G.size(), SIZE_MAX));
  for (std::size_t i = 0; i < C.colour_count(); ++i) {
    const auto& H = C.parts()[i];
    for (Arrow k = 0; k < G.size(); ++k) {
      if (!H.contains(G.src(k)) || raw_of[i][k] != SIZE_MAX) continue;
      CoverElement e{G.rng(k), i, {}};
      for (Arrow h : H.range_fiber(G.src(k))) e.arrows.push_back(G.mul(k, h));
      std::sort(e.arrows.begin(), e.arrows.end());
      for (Arrow a : e.arrows) {
        // Same-colour translates are equal or disjoint.
        if (raw_of[i][a] != SIZE_MAX) throw std::logic_error("overlapping cover elements of one colour");
        raw_of[i][a] = raw.size();
      }
      raw.push_back(std::move(e));
    }
  }
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = raw[a];
    const auto& y = raw[b];
    return std::tie(x.anchor, x.colour, x.arrows) < std::tie(y.anchor, y.colour, y.arrows);
  });
  std::vector<Point> rank(raw.size());
  Cover out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    rank[order[k]] = static_cast<Point>(k);
    out.elements.push_back(raw[order[k]]);
  }
  out.element_of.assign(C.colour_count(), std::vector<Point>(G.size(), kNoPoint));
  for (std::size_t i = 0; i < C.colour_count(); ++i)
    for (Arrow k = 0; k < G.size(); ++k)
      if (raw_of[i][k] != SIZE_MAX) out.element_of[i][k] = rank[raw_of[i][k]];
  std::vector<Arrow> anchors;
  for (const auto& e : out.elements) anchors.push_back(e.anchor);
  out.letters = FiniteGSet(G, std::move(anchors), [&](Arrow g, Point U) {
    const auto& e = out.elements[U];
    return out.element_of[e.colour][G.mul(g, e.arrows.front())];
  });
  return out;
}

// ---------------------------------------------------------------- nerve

ColourVector Nerve::colours(std::span<const Point> simplex) const {
  ColourVector x(simplex.size());
  for (std::size_t k = 0; k < simplex.size(); ++k) x[k] = cover.elements[simplex[k]].colour;
  return x;
}

std::string Nerve::letter_name(Point U) const { return cover.name(colouring.groupoid(), U); }

ColourVector colour_map(const Nerve& N, std::span<const Point> simplex) { return N.colours(simplex); }

Nerve nerve(const Colouring& C, int max_degree) {
  if (max_degree < 0) throw IndexOutOfRange("max_degree must be non-negative");
  const auto& G = C.groupoid();
  Nerve N{C, cover(C), {}, {}, {}, {}, nullptr, nullptr};
  std::vector<std::vector<Point>> S(G.size());
  for (Arrow k = 0; k < G.size(); ++k) S[k] = N.cover.containing(k);
  std::vector<TupleLevel> levels;
  for (int n = 0; n <= max_degree; ++n) {
    const std::size_t arity = n + 1;
    std::size_t raw = 0;
    for (const auto& s : S) {
      std::size_t c = 1;
      for (std::size_t r = 0; r < arity; ++r) c *= s.size();
      raw += c;
    }
    check_cap(n, raw);
    std::vector<Point> flat;
    std::vector<Arrow> wit;
    flat.reserve(raw * arity);
    std::vector<std::size_t> idx(arity);
    for (Arrow k = 0; k < G.size(); ++k) {
      const auto& s = S[k];
      if (s.empty()) continue;
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (std::size_t r = 0; r < arity; ++r) flat.push_back(s[idx[r]]);
        wit.push_back(k);
        std::size_t r = arity;
        while (r > 0 && ++idx[r - 1] == s.size()) idx[--r] = 0;
        if (r == 0) break;
      }
    }
    const std::size_t count = wit.size();
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    auto at = [&](std::size_t i) { return flat.begin() + i * arity; };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(at(a), at(a) + arity, at(b), at(b) + arity);
    });
    std::vector<Point> sorted;
    std::vector<Arrow> sorted_wit;
    for (std::size_t q = 0; q < count; ++q) {
      const std::size_t i = order[q];
      if (q > 0 && std::equal(at(i), at(i) + arity, at(order[q - 1]))) continue;
      sorted.insert(sorted.end(), at(i), at(i) + arity);
      sorted_wit.push_back(wit[i]);
    }
    levels.emplace_back(arity, std::move(sorted), true);
    N.witness.push_back(std::move(sorted_wit));
  }
  N.space = TupleSpace(N.cover.letters, std::move(levels));
  auto colour = [&](Point U) { return N.cover.elements[U].colour; };
  N.strict = N.space.filter([&](int, std::span<const Point> t) {
    for (std::size_t k = 1; k < t.size(); ++k)
      if (colour(t[k - 1]) >= colour(t[k])) return false;
    return true;
  });
  N.weak = N.space.filter([&](int, std::span<const Point> t) {
    for (std::size_t k = 1; k < t.size(); ++k)
      if (colour(t[k - 1]) > colour(t[k])) return false;
    return true;
  });
  auto name = [cov = N.cover, G](Point U) { return cov.name(G, U); };
  N.coinvariant_chains = N.space.coinvariant_complex(name);
  N.strict_coinvariant_chains = N.strict.coinvariant_complex(name);
  return N;
}

// ---------------------------------------------------------------- permutations

Permutation sigma_x(const ColourVector& x) {
  Permutation p(x.size());
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  return p;
}

Permutation sigma_a(const Permutation& sigma, std::size_t a) {
  const std::size_t n = sigma.size();
  if (a >= n && !(n == 0 && a == 0)) throw IndexOutOfRange("sigma_a index out of range");
  Permutation out(n);
  if (a == 0) {
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < a; ++j) {
    out[j] = sigma[j];
    used[sigma[j]] = true;
  }
  std::size_t next = 0;
  for (std::size_t j = a; j < n; ++j) {
    while (used[next]) ++next;
    out[j] = next++;
  }
  return out;
}

int permutation_sign(const Permutation& p) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------- homotopies

void emit_h(const Nerve& N, std::span<const Point> U, const TupleEmitter& emit) {
  const std::size_t n1 = U.size();
  const Permutation sigma = sigma_x(N.colours(U));
  std::vector<Point> img(n1 + 1);
  for (std::size_t a = 0; a < n1; ++a) {
    const Permutation sa = sigma_a(sigma, a);
    std::size_t w = 0;
    for (std::size_t j = 0; j < a; ++j) img[w++] = U[sa[j]];
    img[w++] = U[sigma[a]];
    for (std::size_t j = a; j < n1; ++j) img[w++] = U[sa[j]];
    emit(img, (a % 2 == 0 ? 1 : -1) * permutation_sign(sa));
  }
}

void emit_p(const Nerve& N, std::span<const Point> U, const TupleEmitter& emit) {
  const Permutation sigma = sigma_x(N.colours(U));
  std::vector<Point> img(U.size());
  for (std::size_t j = 0; j < U.size(); ++j) img[j] = U[sigma[j]];
  emit(img, permutation_sign(sigma));
}

void emit_k(const Nerve& N, std::span<const Point> U, const TupleEmitter& emit) {
  const ColourVector x = N.colours(U);
  for (std::size_t a = 0; a + 1 < x.size(); ++a) {
    if (x[a] > x[a + 1]) return;  // not weakly increasing: outside N^>=
    if (x[a] == x[a + 1]) {
      std::vector<Point> img(U.begin(), U.begin() + a + 1);
      img.push_back(U[a]);
      img.insert(img.end(), U.begin() + a + 1, U.end());
      emit(img, a % 2 == 0 ? 1 : -1);
      return;
    }
  }
}

namespace {

HomotopyCertificates assemble(const TupleSpace& S, int max_degree, const std::string& identity,
                              const std::function<std::string(Point)>& name,
                              const std::function<IntMatrix(int)>& F,
                              const std::function<IntMatrix(int)>& H) {
  if (S.top_degree() < max_degree + 1)
    throw IndexOutOfRange("nerve must be built to degree " + std::to_string(max_degree + 1));
  HomotopyCertificates out;
  out.chains.source = out.chains.target = S.complex(name);
  out.coinvariants.source = out.coinvariants.target = S.coinvariant_complex(name);
  for (auto* c : {&out.chains, &out.coinvariants}) {
    c->claimed_identity = identity;
    c->first_degree = 0;
    c->last_degree = max_degree;
  }
  for (int n = 0; n <= max_degree; ++n) {
    IntMatrix f = F(n), h = H(n);
    out.coinvariants.map_matrices[n] = to_coinvariants(S, n, S, n, f);
    out.coinvariants.homotopy_matrices[n] = to_coinvariants(S, n, S, n + 1, h);
    out.chains.map_matrices[n] = std::move(f);
    out.chains.homotopy_matrices[n] = std::move(h);
  }
  return out;
}

}  // namespace

HomotopyCertificates homotopy_h(const Nerve& N, int max_degree) {
  const auto& S = N.space;
  return assemble(
      S, max_degree, "dh + hd = id - i p", [&N](Point U) { return N.letter_name(U); },
      [&](int n) {
        IntMatrix ip = tuple_map_matrix(S.level(n), S.level(n), [&](std::span<const Point> U, const TupleEmitter& e) {
          emit_p(N, U, e);
        });
        return IntMatrix::identity(S.size(n)) - ip;
      },
      [&](int n) {
        return tuple_map_matrix(S.level(n), S.level(n + 1),
                                [&](std::span<const Point> U, const TupleEmitter& e) { emit_h(N, U, e); });
      });
}

HomotopyCertificates homotopy_k(const Nerve& N, int max_degree) {
  const auto& W = N.weak;
  return assemble(
      W, max_degree, "dk + kd = id - j q", [&N](Point U) { return N.letter_name(U); },
      [&](int n) {
        std::vector<IntMatrix::Column> cols(W.size(n));
        for (std::size_t j = 0; j < W.size(n); ++j)
          if (!N.strict.level(n).find(W.level(n)[j])) cols[j].push_back({j, Integer(1)});
        return IntMatrix::from_columns(W.size(n), std::move(cols));
      },
      [&](int n) {
        return tuple_map_matrix(W.level(n), W.level(n + 1),
                                [&](std::span<const Point> U, const TupleEmitter& e) { emit_k(N, U, e); });
      });
}

IntMatrix strict_retraction(const Nerve& N, int n) {
  IntMatrix qp = tuple_map_matrix(N.space.level(n), N.strict.level(n),
                                  [&](std::span<const Point> U, const TupleEmitter& e) {
                                    emit_p(N, U, [&](std::span<const Point> V, int c) {
                                      if (N.strict.level(n).find(V)) e(V, c);
                                    });
                                  });
  return to_coinvariants(N.space, n, N.strict, n, qp);
}

IntMatrix strict_inclusion(const Nerve& N, int n) {
  return to_coinvariants(N.strict, n, N.space, n, inclusion_matrix(N.strict, N.space, n));
}

ColouringHomology colouring_homology(const Nerve& N, int n) {
  if (N.space.top_degree() < n + 1)
    throw IndexOutOfRange("nerve must be built to degree " + std::to_string(n + 1));
  return {homology(*N.coinvariant_chains, n), homology(*N.strict_coinvariant_chains, n)};
}

HomologyGroup homology_of_colouring(const Colouring& C, int n) {
  if (n < 0) return {};
  Nerve N = nerve(C, n + 1);
  auto h = colouring_homology(N, n);
  if (!h.agree())
    throw std::logic_error("homology of the nerve (" + h.full.str() + ") differs from its ordered part (" +
                           h.strict.str() + ") in degree " + std::to_string(n));
  return h.full;
}

}  // namespace ghom
