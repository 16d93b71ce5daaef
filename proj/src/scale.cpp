#include "ghom/scale.hpp"

#include <algorithm>

#include "ghom/errors.hpp"

namespace ghom {

ScaleSet::ScaleSet(const FiniteAmpleGroupoid& G, std::vector<Arrow> arrows)
    : mask_(G.size(), false) {
  for (Arrow a : arrows) {
    if (a >= G.size()) throw IndexOutOfRange("scale arrow " + std::to_string(a) + " out of range");
    mask_[a] = true;
  }
  for (Arrow a = 0; a < G.size(); ++a)
    if (mask_[a]) arrows_.push_back(a);
}

ScaleSet ScaleSet::units(const FiniteAmpleGroupoid& G) { return ScaleSet(G, G.units()); }

ScaleSet ScaleSet::all(const FiniteAmpleGroupoid& G) {
  std::vector<Arrow> a(G.size());
  for (Arrow k = 0; k < G.size(); ++k) a[k] = k;
  return ScaleSet(G, std::move(a));
}

bool ScaleSet::is_symmetric(const FiniteAmpleGroupoid& G) const {
  return std::all_of(arrows_.begin(), arrows_.end(), [&](Arrow a) { return contains(G.inv(a)); });
}

bool ScaleSet::is_admissible(const FiniteAmpleGroupoid& G) const {
  return is_symmetric(G) &&
         std::all_of(G.units().begin(), G.units().end(), [&](Arrow x) { return contains(x); });
}

ScaleSet scale_union(const FiniteAmpleGroupoid& G, const ScaleSet& A, const ScaleSet& B) {
  std::vector<Arrow> u = A.arrows();
  u.insert(u.end(), B.arrows().begin(), B.arrows().end());
  return ScaleSet(G, std::move(u));
}

ScaleSet scale_inverse(const FiniteAmpleGroupoid& G, const ScaleSet& A) {
  std::vector<Arrow> u;
  for (Arrow a : A.arrows()) u.push_back(G.inv(a));
  return ScaleSet(G, std::move(u));
}

ScaleSet scale_product(const FiniteAmpleGroupoid& G, const ScaleSet& A, const ScaleSet& B) {
  std::vector<Arrow> u;
  for (Arrow a : A.arrows())
    for (Arrow b : G.range_fiber(G.src(a)))
      if (B.contains(b)) u.push_back(G.mul(a, b));
  return ScaleSet(G, std::move(u));
}

ScaleSet scale_power(const FiniteAmpleGroupoid& G, const ScaleSet& K, int k) {
  if (k < 1) throw IndexOutOfRange("scale power must be positive");
  ScaleSet out = K;
  for (int i = 1; i < k; ++i) out = scale_product(G, out, K);
  return out;
}

ScaleSet admissible_closure(const FiniteAmpleGroupoid& G, const ScaleSet& A) {
  return scale_union(G, scale_union(G, A, scale_inverse(G, A)), ScaleSet::units(G));
}

bool is_K_bounded(const Colouring& C, const ScaleSet& K) {
  for (const auto& H : C.parts())
    for (Arrow a : H.members())
      if (!K.contains(a)) return false;
  return true;
}

std::optional<Arrow> lebesgue_failure(const Colouring& C, const ScaleSet& K) {
  const auto& G = C.groupoid();
  for (Arrow x : G.units()) {
    bool swallowed = std::any_of(C.parts().begin(), C.parts().end(), [&](const Subgroupoid& H) {
      for (Arrow g : G.range_fiber(x))
        if (K.contains(g) && !H.contains(g)) return false;
      return true;
    });
    if (!swallowed) return x;
  }
  return std::nullopt;
}

bool is_K_lebesgue(const Colouring& C, const ScaleSet& K) { return !lebesgue_failure(C, K); }

}  // namespace ghom
