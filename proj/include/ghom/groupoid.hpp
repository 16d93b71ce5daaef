#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ghom {

// Arrows are numbered 0..N-1 in lexicographic order of their identifiers.
using Arrow = std::uint32_t;
inline constexpr Arrow kNoArrow = UINT32_MAX;

// Raw description handed to the validating constructor. Indices refer to
// positions in `ids`; compose(g, h) is only queried when src[g] == rng[h].
struct GroupoidTable {
  std::vector<std::string> ids;
  std::vector<std::size_t> src, rng, inv;
  std::function<std::size_t(std::size_t, std::size_t)> compose;
};

// Finite groupoid with eagerly validated structure. Cheap to copy (shared,
// immutable data); two copies compare equal iff they share the same data.
class FiniteAmpleGroupoid {
 public:
  FiniteAmpleGroupoid();
  explicit FiniteAmpleGroupoid(const GroupoidTable& table);

  std::size_t size() const { return d_->ids.size(); }
  std::size_t unit_count() const { return d_->units.size(); }
  const std::string& id(Arrow a) const { return d_->ids[a]; }
  std::optional<Arrow> find(const std::string& id) const;
  Arrow arrow(const std::string& id) const;  // throws UnknownUnit-like error

  Arrow src(Arrow a) const { return d_->src[a]; }
  Arrow rng(Arrow a) const { return d_->rng[a]; }
  Arrow inv(Arrow a) const { return d_->inv[a]; }
  bool is_unit(Arrow a) const { return d_->src[a] == a && d_->rng[a] == a; }

  bool composable(Arrow g, Arrow h) const { return src(g) == rng(h); }
  // g*h, defined iff src(g) == rng(h).
  std::optional<Arrow> compose(Arrow g, Arrow h) const;
  Arrow mul(Arrow g, Arrow h) const {
    return d_->table[d_->table_offset[g] + d_->range_pos[h]];
  }

  const std::vector<Arrow>& units() const { return d_->units; }
  std::size_t unit_ordinal(Arrow x) const { return d_->unit_ordinal[x]; }
  // G^x and G_x, sorted.
  const std::vector<Arrow>& range_fiber(Arrow x) const;
  const std::vector<Arrow>& source_fiber(Arrow x) const;
  std::size_t range_position(Arrow a) const { return d_->range_pos[a]; }
  std::size_t source_position(Arrow a) const { return d_->source_pos[a]; }

  bool same_as(const FiniteAmpleGroupoid& o) const { return d_ == o.d_; }

 private:
  struct Data {
    std::vector<std::string> ids;
    std::vector<Arrow> src, rng, inv;
    std::vector<Arrow> units;
    std::vector<std::size_t> unit_ordinal;
    std::vector<std::vector<Arrow>> range_fibers, source_fibers;  // by unit ordinal
    std::vector<std::size_t> range_pos, source_pos;
    // Composable-pairs table: g*h at table_offset[g] + range_pos[h].
    std::vector<std::size_t> table_offset;
    std::vector<Arrow> table;
  };
  std::shared_ptr<const Data> d_;
};

enum class FiberKind { range, source };

std::vector<Arrow> fiber(const FiniteAmpleGroupoid& G, Arrow x, FiberKind kind);

// Arrow set closed under composition and inverses, containing the units of
// its members.
class Subgroupoid {
 public:
  Subgroupoid() = default;
  // Validates closure; throws MalformedSpec naming a violating triple.
  Subgroupoid(FiniteAmpleGroupoid G, std::vector<Arrow> members);

  const FiniteAmpleGroupoid& parent() const { return G_; }
  const std::vector<Arrow>& members() const { return members_; }
  const std::vector<Arrow>& unit_space() const { return units_; }
  bool contains(Arrow a) const { return a < mask_.size() && mask_[a]; }
  bool contains_unit(Arrow x) const { return contains(x); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  // Arrows of this subgroupoid with range x.
  std::vector<Arrow> range_fiber(Arrow x) const;
  friend bool operator==(const Subgroupoid& a, const Subgroupoid& b) {
    return a.members_ == b.members_;
  }

 private:
  FiniteAmpleGroupoid G_;
  std::vector<Arrow> members_;
  std::vector<Arrow> units_;
  std::vector<bool> mask_;
};

Subgroupoid generated_subgroupoid(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& S);
Subgroupoid whole(const FiniteAmpleGroupoid& G);

bool is_principal(const FiniteAmpleGroupoid& G);

struct PrincipalBlock {
  std::vector<Arrow> orbit_units;  // sorted; front() is the basepoint
  std::vector<Arrow> arrows;       // sorted
  Arrow basepoint() const { return orbit_units.front(); }
};

struct PrincipalBlockDecomposition {
  std::vector<PrincipalBlock> blocks;
  std::vector<std::size_t> block_of;  // unit arrow -> block index (SIZE_MAX if absent)
  std::vector<Arrow> tau_of;          // unit arrow -> member with range x, source basepoint

  Arrow sigma(Arrow x) const { return blocks.at(block_of.at(x)).basepoint(); }
  Arrow tau(Arrow x) const { return tau_of.at(x); }
};

// Basepoints are minimal units unless `maximal_basepoints` is set (the other
// deterministic section, used to produce close pairs of maps).
PrincipalBlockDecomposition principal_blocks(const Subgroupoid& H, bool maximal_basepoints = false);

// The groupoid formed by H's arrows alone.
FiniteAmpleGroupoid as_groupoid(const Subgroupoid& H);
// Disjoint union of pair groupoids on the orbits, unit names preserved.
FiniteAmpleGroupoid reassemble(const FiniteAmpleGroupoid& parent,
                               const PrincipalBlockDecomposition& blocks);

// Exhaustive search; returns phi with phi[a] the image of arrow a of G.
std::optional<std::vector<Arrow>> find_isomorphism(const FiniteAmpleGroupoid& G,
                                                   const FiniteAmpleGroupoid& H);

// Builders. Unit identifiers: pair "(i,i)", cyclic "g0", action: the point.
FiniteAmpleGroupoid pair_groupoid(std::size_t n);
FiniteAmpleGroupoid pair_groupoid(const std::vector<std::string>& points);
FiniteAmpleGroupoid cyclic_group(std::size_t m);
// mul lists every product [a, b, ab] over `elements`.
FiniteAmpleGroupoid group_from_table(const std::vector<std::string>& elements,
                                     const std::vector<std::array<std::string, 3>>& mul);
// `group` must have a single unit; act lists [g, x, g.x] for every g and x.
FiniteAmpleGroupoid action_groupoid(const FiniteAmpleGroupoid& group,
                                    const std::vector<std::string>& points,
                                    const std::vector<std::array<std::string, 3>>& act);
FiniteAmpleGroupoid disjoint_union(const std::vector<FiniteAmpleGroupoid>& parts);
FiniteAmpleGroupoid restriction(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& units);
// Explicit table; compose lists every composable pair exactly once.
struct ExplicitArrow {
  std::string id, src, rng, inv;
};
FiniteAmpleGroupoid from_explicit_table(const std::vector<std::string>& units,
                                        const std::vector<ExplicitArrow>& arrows,
                                        const std::vector<std::array<std::string, 3>>& compose);

}  // namespace ghom
