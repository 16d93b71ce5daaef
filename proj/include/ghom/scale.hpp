#pragma once

#include <optional>
#include <vector>

#include "ghom/colouring.hpp"
#include "ghom/groupoid.hpp"

namespace ghom {

// A subset K of the arrows, stored as a mask and a sorted list.
class ScaleSet {
 public:
  ScaleSet() = default;
  ScaleSet(const FiniteAmpleGroupoid& G, std::vector<Arrow> arrows);
  static ScaleSet units(const FiniteAmpleGroupoid& G);
  static ScaleSet all(const FiniteAmpleGroupoid& G);

  bool contains(Arrow a) const { return a < mask_.size() && mask_[a]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<bool>& mask() const { return mask_; }
  std::size_t size() const { return arrows_.size(); }

  bool is_symmetric(const FiniteAmpleGroupoid& G) const;
  // Symmetric and containing every unit.
  bool is_admissible(const FiniteAmpleGroupoid& G) const;

  friend bool operator==(const ScaleSet& a, const ScaleSet& b) { return a.arrows_ == b.arrows_; }

 private:
  std::vector<bool> mask_;
  std::vector<Arrow> arrows_;
};

ScaleSet scale_union(const FiniteAmpleGroupoid& G, const ScaleSet& A, const ScaleSet& B);
ScaleSet scale_inverse(const FiniteAmpleGroupoid& G, const ScaleSet& A);
// {ab : a in A, b in B, s(a) = r(b)}
ScaleSet scale_product(const FiniteAmpleGroupoid& G, const ScaleSet& A, const ScaleSet& B);
ScaleSet scale_power(const FiniteAmpleGroupoid& G, const ScaleSet& K, int k);
// A together with its inverses and all units.
ScaleSet admissible_closure(const FiniteAmpleGroupoid& G, const ScaleSet& A);

// Every part is contained in K.
bool is_K_bounded(const Colouring& C, const ScaleSet& K);
// A unit x such that no part contains G^x cap K, if any.
std::optional<Arrow> lebesgue_failure(const Colouring& C, const ScaleSet& K);
bool is_K_lebesgue(const Colouring& C, const ScaleSet& K);

}  // namespace ghom
