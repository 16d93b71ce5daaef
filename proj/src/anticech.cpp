#include "ghom/anticech.hpp"

#include <algorithm>

#include "ghom/dad.hpp"
#include "ghom/errors.hpp"

namespace ghom {

namespace {

bool swallows(const FiniteAmpleGroupoid& G, const ScaleSet& K, const Subgroupoid& H, Arrow y) {
  for (Arrow g : G.range_fiber(y))
    if (K.contains(g) && !H.contains(g)) return false;
  return true;
}

// U K = {u k : u in U, k in K, s(u) = r(k)} lies inside the target set.
bool inflates_into(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& U, const ScaleSet& K,
                   const std::vector<Arrow>& target) {
  for (Arrow u : U)
    for (Arrow k : G.range_fiber(G.src(u)))
      if (K.contains(k) && !std::binary_search(target.begin(), target.end(), G.mul(u, k))) return false;
  return true;
}

LetterMap compose(const LetterMap& f, const LetterMap& g) {  // f after g
  LetterMap out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) out[p] = f.at(g[p]);
  return out;
}

LetterMap identity_map(std::size_t n) {
  LetterMap out(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = static_cast<Point>(p);
  return out;
}

}  // namespace

LetterMap phi(const Nerve& N, const ScaleSet& K) {
  const auto& G = N.colouring.groupoid();
  const auto& parts = N.colouring.parts();
  std::vector<std::size_t> colour_of(G.size(), SIZE_MAX);
  for (Arrow x : G.units()) {
    for (std::size_t i = 0; i < parts.size() && colour_of[x] == SIZE_MAX; ++i)
      if (parts[i].contains(x) && swallows(G, K, parts[i], x)) colour_of[x] = i;
    if (colour_of[x] == SIZE_MAX) throw NotLebesgue("no colour contains G^x cap K at unit " + G.id(x));
  }
  LetterMap out(G.size());
  for (Arrow g = 0; g < G.size(); ++g) {
    out[g] = N.cover.element_of[colour_of[G.src(g)]][g];
    if (!inflates_into(G, {g}, K, N.cover.elements[out[g]].arrows))
      throw std::logic_error("Phi_0(" + G.id(g) + ") does not contain gK");
  }
  return out;
}

LetterMap psi(const Nerve& N, bool maximal_basepoints) {
  const auto& G = N.colouring.groupoid();
  if (!is_principal(G)) throw NotPrincipal("Psi needs a principal groupoid");
  std::vector<PrincipalBlockDecomposition> blocks;
  for (const auto& H : N.colouring.parts()) blocks.push_back(principal_blocks(H, maximal_basepoints));
  LetterMap out(N.cover.elements.size());
  for (std::size_t U = 0; U < out.size(); ++U) {
    const auto& e = N.cover.elements[U];
    const auto& B = blocks[e.colour];
    const Arrow value = G.mul(e.arrows.front(), B.tau(G.src(e.arrows.front())));
    for (Arrow g : e.arrows)
      if (G.mul(g, B.tau(G.src(g))) != value)
        throw std::logic_error("Psi_0 depends on the representative of " + N.letter_name(U));
    if (!std::binary_search(e.arrows.begin(), e.arrows.end(), value))
      throw std::logic_error("Psi_0(U) is not in U for " + N.letter_name(U));
    out[U] = value;
  }
  return out;
}

bool inflates(const Nerve& source, const Nerve& target, const LetterMap& f, const ScaleSet& K) {
  const auto& G = source.colouring.groupoid();
  for (std::size_t U = 0; U < f.size(); ++U)
    if (!inflates_into(G, source.cover.elements[U].arrows, K, target.cover.elements[f[U]].arrows)) return false;
  return true;
}

LetterMap iota(const Nerve& source, const Nerve& target, const ScaleSet& K) {
  const auto& G = source.colouring.groupoid();
  if (!is_K_bounded(source.colouring, K)) throw NotBounded("source colouring is not K-bounded");
  LetterMap f = compose(phi(target, scale_power(G, K, 3)), psi(source));
  if (!inflates(source, target, f, K)) throw std::logic_error("iota_0(U) does not contain UK");
  return f;
}

bool close_in_nerve(const Nerve& target, const LetterMap& alpha, const LetterMap& beta, const ScaleSet& K) {
  if (alpha.size() != beta.size()) throw DimensionMismatch("letter maps have different sources");
  const auto& G = target.colouring.groupoid();
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    const auto& A = target.cover.elements[alpha[p]];
    const auto& B = target.cover.elements[beta[p]];
    if (A.anchor != B.anchor) return false;
    bool found = false;
    for (Arrow g : G.range_fiber(A.anchor)) {
      std::vector<Arrow> gK;
      for (Arrow k : G.range_fiber(G.src(g)))
        if (K.contains(k)) gK.push_back(G.mul(g, k));
      std::sort(gK.begin(), gK.end());
      if (std::includes(gK.begin(), gK.end(), A.arrows.begin(), A.arrows.end()) &&
          std::includes(gK.begin(), gK.end(), B.arrows.begin(), B.arrows.end())) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool close_in_eg(const FiniteAmpleGroupoid& G, const LetterMap& alpha, const LetterMap& beta, const ScaleSet& K) {
  if (alpha.size() != beta.size()) throw DimensionMismatch("letter maps have different sources");
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    auto q = G.compose(G.inv(alpha[p]), beta[p]);
    if (!q || !K.contains(*q)) return false;
  }
  return true;
}

TupleMorphism morphism(const TupleSpace& source, const TupleSpace& target, const LetterMap& f) {
  return TupleMorphism{&source, &target, f};
}

HomotopyCertificates closeness_homotopy(const TupleSpace& source, const TupleSpace& target, const LetterMap& a,
                                        const LetterMap& b, int max_degree) {
  if (target.top_degree() < max_degree + 1 || source.top_degree() < max_degree)
    throw IndexOutOfRange("closeness homotopy needs the target built to degree " + std::to_string(max_degree + 1));
  HomotopyCertificates out;
  out.chains.source = source.complex();
  out.chains.target = target.complex();
  out.coinvariants.source = source.coinvariant_complex();
  out.coinvariants.target = target.coinvariant_complex();
  for (auto* c : {&out.chains, &out.coinvariants}) {
    c->claimed_identity = "dh + hd = b - a";
    c->first_degree = 0;
    c->last_degree = max_degree;
  }
  const auto A = morphism(source, target, a);
  const auto B = morphism(source, target, b);
  for (int n = 0; n <= max_degree; ++n) {
    IntMatrix F = B.matrix(n) - A.matrix(n);
    IntMatrix H;
    try {
      H = tuple_map_matrix(source.level(n), target.level(n + 1),
                           [&](std::span<const Point> x, const TupleEmitter& emit) {
                             std::vector<Point> img(x.size() + 1);
                             for (std::size_t i = 0; i < x.size(); ++i) {
                               for (std::size_t j = 0; j <= i; ++j) img[j] = a[x[j]];
                               for (std::size_t j = i; j < x.size(); ++j) img[j + 1] = b[x[j]];
                               emit(img, i % 2 == 0 ? 1 : -1);
                             }
                           });
    } catch (const NotAComplex& e) {
      throw IntersectionWitnessNotFound(std::string("closeness homotopy leaves the target: ") + e.what());
    }
    out.coinvariants.map_matrices[n] = to_coinvariants(source, n, target, n, F);
    out.coinvariants.homotopy_matrices[n] = to_coinvariants(source, n, target, n + 1, H);
    out.chains.map_matrices[n] = std::move(F);
    out.chains.homotopy_matrices[n] = std::move(H);
  }
  return out;
}

IntMatrix strict_chain_map(const Nerve& source, const Nerve& target, const LetterMap& f, int n) {
  return strict_retraction(target, n) * morphism(source.space, target.space, f).coinvariant_matrix(n) *
         strict_inclusion(source, n);
}

namespace {

AntiCechStep make_step(const FiniteAmpleGroupoid& G, ScaleSet K, int max_degree) {
  Colouring C = k_lebesgue_colouring(G, scale_power(G, K, 3));
  Nerve N = nerve(C, max_degree + 1);
  std::vector<HomologyGroup> H;
  for (int n = 0; n <= max_degree; ++n) H.push_back(colouring_homology(N, n).full);
  return AntiCechStep{std::move(K), std::move(C), std::move(N), {}, std::move(H), true};
}

bool same_colouring(const Colouring& a, const Colouring& b) { return a.parts() == b.parts(); }

}  // namespace

AntiCechSequence build_anti_cech(const FiniteAmpleGroupoid& G, int steps, int max_degree) {
  if (steps < 1) throw IndexOutOfRange("anti-Cech sequence needs at least one step");
  if (max_degree < 0) throw IndexOutOfRange("max_degree must be non-negative");
  if (!is_principal(G)) throw NotPrincipal("anti-Cech sequences are built for principal groupoids");
  std::vector<Arrow> nonunits;
  for (Arrow a = 0; a < G.size(); ++a)
    if (!G.is_unit(a)) nonunits.push_back(a);
  const std::size_t total = nonunits.size();
  auto L = [&](int j) {
    std::size_t count = total;
    if (steps > 1) count = std::min(total, (j * total + steps - 2) / (steps - 1));
    return admissible_closure(G, ScaleSet(G, std::vector<Arrow>(nonunits.begin(), nonunits.begin() + count)));
  };
  AntiCechSequence A{G, max_degree, {}, std::nullopt};
  A.steps.push_back(make_step(G, L(0), max_degree));
  const ScaleSet everything = ScaleSet::all(G);
  for (int j = 1; j <= steps + 1; ++j) {
    const auto& prev = A.steps.back();
    std::vector<Arrow> absorbed;
    for (const auto& H : prev.colouring.parts())
      absorbed.insert(absorbed.end(), H.members().begin(), H.members().end());
    ScaleSet K = scale_union(G, scale_union(G, prev.scale, L(j)), admissible_closure(G, ScaleSet(G, absorbed)));
    AntiCechStep step = make_step(G, std::move(K), max_degree);
    step.iota = iota(prev.nerve, step.nerve, step.scale);
    step.inflation_ok = inflates(prev.nerve, step.nerve, step.iota, step.scale);
    A.steps.push_back(std::move(step));
    const auto& before = A.steps[A.steps.size() - 2];
    const auto& now = A.steps.back();
    if (before.scale == everything && same_colouring(before.colouring, now.colouring)) {
      bool identity = true;
      for (int n = 0; n <= max_degree && identity; ++n) {
        auto P = present_homology(*now.nerve.strict_coinvariant_chains, n);
        IntMatrix M = induced_map(P, strict_chain_map(before.nerve, now.nerve, now.iota, n), P);
        identity = is_identity_on_homology(M, P.orders);
      }
      if (identity) {
        A.stable_index = A.steps.size() - 2;
        break;
      }
    }
  }
  return A;
}

HomologyGroup anti_cech_homology(const AntiCechSequence& A, int n) {
  if (!A.stable_index) throw NotStabilized("anti-Cech sequence did not stabilize");
  if (n < 0) return {};
  if (n > A.max_degree) throw IndexOutOfRange("degree above the computed range");
  return A.steps[*A.stable_index].homology[n];
}

bool AntiCechComparison::ok() const {
  return closeness_ok && anti_cech == groupoid &&
         std::all_of(inverse.begin(), inverse.end(), [](bool b) { return b; });
}

AntiCechComparison compare_with_groupoid(const AntiCechSequence& A) {
  if (!A.stable_index) throw NotStabilized("anti-Cech sequence did not stabilize");
  const auto& G = A.groupoid;
  const auto& N = A.steps[*A.stable_index].nerve;
  const int max = A.max_degree;
  const EgComplex eg = eg_complex(G, max + 1);
  const LetterMap Phi = phi(N, ScaleSet::all(G));
  const LetterMap Psi = psi(N);
  const auto to_nerve = morphism(eg.space, N.space, Phi);
  const auto to_eg = morphism(N.space, eg.space, Psi);
  AntiCechComparison out;
  for (int n = 0; n <= max; ++n) {
    out.anti_cech.push_back(A.steps[*A.stable_index].homology[n]);
    out.groupoid.push_back(homology_of_groupoid(G, n));
    auto Pe = present_homology(*eg.coinvariants, n);
    auto Ps = present_homology(*N.strict_coinvariant_chains, n);
    IntMatrix a = induced_map(Pe, strict_retraction(N, n) * to_nerve.coinvariant_matrix(n), Ps);
    IntMatrix b = induced_map(Ps, to_eg.coinvariant_matrix(n) * strict_inclusion(N, n), Pe);
    out.inverse.push_back(is_identity_on_homology(b * a, Pe.orders) && is_identity_on_homology(a * b, Ps.orders));
  }
  const LetterMap nerve_round = compose(Phi, Psi);
  const LetterMap eg_round = compose(Psi, Phi);
  const ScaleSet all = ScaleSet::all(G);
  bool ok = close_in_nerve(N, nerve_round, identity_map(nerve_round.size()), all) &&
            close_in_eg(G, eg_round, identity_map(eg_round.size()), all);
  if (ok) {
    auto hn = closeness_homotopy(N.space, N.space, nerve_round, identity_map(nerve_round.size()), max);
    auto he = closeness_homotopy(eg.space, eg.space, eg_round, identity_map(eg_round.size()), max);
    ok = certify_homotopy(hn.chains).ok && certify_homotopy(hn.coinvariants).ok &&
         certify_homotopy(he.chains).ok && certify_homotopy(he.coinvariants).ok;
  }
  out.closeness_ok = ok;
  return out;
}

}  // namespace ghom
