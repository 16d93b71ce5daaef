#include "ghom/dad.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ghom/errors.hpp"

namespace ghom {

namespace {

void require_admissible(const FiniteAmpleGroupoid& G, const ScaleSet& K) {
  if (!K.is_admissible(G)) throw MalformedSpec("scale must be symmetric and contain every unit");
}

bool swallows(const FiniteAmpleGroupoid& G, const ScaleSet& K, const Subgroupoid& H, Arrow y) {
  for (Arrow g : G.range_fiber(y))
    if (K.contains(g) && !H.contains(g)) return false;
  return true;
}

}  // namespace

CombBlocks comb_blocks(const FiniteAmpleGroupoid& G, const ScaleSet& K, Arrow x) {
  if (!G.is_unit(x)) throw UnknownUnit("not a unit: " + G.id(x));
  if (!is_principal(G)) throw NotPrincipal("comb blocks need a principal groupoid");
  // Singletons are bisections, and principality keeps their sources apart.
  CombBlocks B{{x}, {}};
  for (Arrow g : G.range_fiber(x))
    if (K.contains(g)) B.blocks.push_back({g});
  return B;
}

bool verify_comb_blocks(const FiniteAmpleGroupoid& G, const ScaleSet& K, const CombBlocks& B) {
  std::set<Arrow> base(B.base.begin(), B.base.end());
  if (base.size() != B.base.size()) return false;
  for (Arrow x : base)
    if (!G.is_unit(x)) return false;
  std::set<Arrow> lhs, rhs, sources;
  for (Arrow x : base)
    for (Arrow g : G.range_fiber(x))
      if (K.contains(g)) lhs.insert(g);
  for (const auto& b : B.blocks) {
    std::set<Arrow> ranges, block_sources;
    for (Arrow g : b) {
      if (!rhs.insert(g).second) return false;  // blocks must be disjoint
      ranges.insert(G.rng(g));
      block_sources.insert(G.src(g));
    }
    // r is a bijection onto B_0 and s is injective.
    if (ranges != base || b.size() != base.size() || block_sources.size() != b.size()) return false;
    for (Arrow y : block_sources)
      if (!sources.insert(y).second) return false;
  }
  return lhs == rhs;
}

Subgroupoid comb_subgroupoid(const FiniteAmpleGroupoid& G, const ScaleSet& K, Arrow x) {
  const CombBlocks B = comb_blocks(G, K, x);
  std::vector<Arrow> rho;
  for (const auto& b : B.blocks) rho.push_back(b.front());
  std::vector<Arrow> members;
  for (Arrow a : rho)
    for (Arrow b : rho) members.push_back(G.mul(G.inv(a), b));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Subgroupoid(G, std::move(members));
}

Colouring k_lebesgue_colouring(const FiniteAmpleGroupoid& G, const ScaleSet& K) {
  require_admissible(G, K);
  if (!is_principal(G)) throw NotPrincipal("K-Lebesgue colourings are built for principal groupoids");
  struct Candidate {
    Arrow x;
    Subgroupoid H;
    std::vector<Arrow> swallowed;  // units y with G^y cap K inside H
  };
  std::vector<Candidate> cand;
  for (Arrow x : G.units()) {
    Candidate c{x, comb_subgroupoid(G, K, x), {}};
    for (Arrow y : c.H.unit_space())
      if (swallows(G, K, c.H, y)) c.swallowed.push_back(y);
    cand.push_back(std::move(c));
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    return a.H.unit_space().size() > b.H.unit_space().size();
  });
  std::vector<bool> done(G.size(), false);
  std::vector<Subgroupoid> parts;
  for (auto& c : cand) {
    bool fresh = std::any_of(c.swallowed.begin(), c.swallowed.end(), [&](Arrow y) { return !done[y]; });
    if (!fresh) continue;
    for (Arrow y : c.swallowed) done[y] = true;
    parts.push_back(std::move(c.H));
  }
  return Colouring(G, std::move(parts));
}

Subgroupoid generated_on(const FiniteAmpleGroupoid& G, const ScaleSet& K, const std::vector<Arrow>& units) {
  std::vector<bool> in(G.size(), false);
  for (Arrow y : units) in[y] = true;
  std::vector<Arrow> gens;
  for (Arrow g : K.arrows())
    if (in[G.rng(g)] && in[G.src(g)]) gens.push_back(g);
  return generated_subgroupoid(G, gens);
}

void validate_witness(const FiniteAmpleGroupoid& G, const DadWitness& w) {
  std::vector<bool> covered(G.size(), false);
  for (const auto& U : w.cover)
    for (Arrow y : U) {
      if (y >= G.size() || !G.is_unit(y)) throw WitnessInvalid("cover contains a non-unit");
      covered[y] = true;
    }
  for (Arrow g : w.scale.arrows())
    for (Arrow y : {G.rng(g), G.src(g)})
      if (!covered[y]) throw WitnessInvalid("cover misses unit " + G.id(y));
  if (w.generated.size() != w.cover.size()) throw WitnessInvalid("one generated subgroupoid per cover set expected");
  for (std::size_t i = 0; i < w.cover.size(); ++i) {
    if (!(w.generated[i] == generated_on(G, w.scale, w.cover[i])))
      throw WitnessInvalid("generated subgroupoid " + std::to_string(i) + " does not match its cover set");
    if (w.generated[i].size() > w.size_cap)
      throw WitnessInvalid("generated subgroupoid " + std::to_string(i) + " has " +
                           std::to_string(w.generated[i].size()) + " arrows, cap " + std::to_string(w.size_cap));
  }
}

DadWitness make_witness(const FiniteAmpleGroupoid& G, const ScaleSet& K,
                        std::vector<std::vector<Arrow>> cover, std::size_t size_cap) {
  DadWitness w{K, std::move(cover), {}, size_cap, false};
  for (auto& U : w.cover) {
    std::sort(U.begin(), U.end());
    w.generated.push_back(generated_on(G, K, U));
  }
  return w;
}

namespace {

// Assigns targets[k..] to classes; a new class may only be opened in order.
bool assign(const FiniteAmpleGroupoid& G, const ScaleSet& K, const std::vector<Arrow>& targets, std::size_t k,
            std::vector<std::vector<Arrow>>& classes, std::size_t used, std::size_t cap) {
  if (k == targets.size()) return true;
  for (std::size_t i = 0; i < classes.size() && i <= used; ++i) {
    classes[i].push_back(targets[k]);
    if (generated_on(G, K, classes[i]).size() <= cap &&
        assign(G, K, targets, k + 1, classes, std::max(used, i + 1), cap))
      return true;
    classes[i].pop_back();
  }
  return false;
}

}  // namespace

std::optional<DadWitness> search_witness(const FiniteAmpleGroupoid& G, const ScaleSet& K, int d_max,
                                         std::size_t size_cap) {
  std::vector<bool> needed(G.size(), false);
  for (Arrow g : K.arrows()) needed[G.rng(g)] = needed[G.src(g)] = true;
  std::vector<Arrow> targets;
  for (Arrow y : G.units())
    if (needed[y]) targets.push_back(y);
  const bool exact = G.unit_count() <= 12;
  for (int d = 0; d <= d_max; ++d) {
    std::vector<std::vector<Arrow>> classes(d + 1);
    bool found = false;
    if (exact) {
      found = assign(G, K, targets, 0, classes, 0, size_cap);
    } else {
      found = true;
      for (Arrow y : targets) {
        bool placed = false;
        for (auto& U : classes) {
          U.push_back(y);
          if (generated_on(G, K, U).size() <= size_cap) {
            placed = true;
            break;
          }
          U.pop_back();
        }
        if (!placed) {
          found = false;
          break;
        }
      }
    }
    if (found) {
      auto w = make_witness(G, K, std::move(classes), size_cap);
      w.greedy = !exact;
      return w;
    }
  }
  return std::nullopt;
}

Colouring dad_witness_to_colouring(const FiniteAmpleGroupoid& G, const ScaleSet& K, const DadWitness& w) {
  require_admissible(G, K);
  if (!(w.scale == scale_power(G, K, 3))) throw WitnessInvalid("witness scale must be the cube of the requested scale");
  validate_witness(G, w);
  std::vector<Subgroupoid> parts;
  for (const auto& U : w.cover) {
    std::vector<bool> in(G.size(), false);
    for (Arrow y : U) in[y] = true;
    std::vector<Arrow> W;
    for (Arrow g : K.arrows())
      if (in[G.rng(g)]) W.push_back(G.src(g));
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    auto H = generated_on(G, K, W);
    if (!H.empty()) parts.push_back(std::move(H));
  }
  return Colouring(G, std::move(parts));
}

}  // namespace ghom
