#include "ghom/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ghom/errors.hpp"

namespace ghom {

FiniteAmpleGroupoid::FiniteAmpleGroupoid() : d_(std::make_shared<const Data>()) {}

FiniteAmpleGroupoid::FiniteAmpleGroupoid(const GroupoidTable& t) {
  const std::size_t N = t.ids.size();
  if (t.src.size() != N || t.rng.size() != N || t.inv.size() != N)
    throw MalformedSpec("groupoid table: src/rng/inv sizes differ from arrow count");
  if (N >= kNoArrow) throw MalformedSpec("groupoid table: too many arrows");
  for (std::size_t a = 0; a < N; ++a)
    if (t.src[a] >= N || t.rng[a] >= N || t.inv[a] >= N)
      throw MalformedSpec("groupoid table: arrow '" + t.ids[a] + "' refers outside the table");

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return t.ids[a] < t.ids[b]; });
  std::vector<Arrow> pos(N);
  for (std::size_t k = 0; k < N; ++k) pos[order[k]] = static_cast<Arrow>(k);
  for (std::size_t k = 1; k < N; ++k)
    if (t.ids[order[k]] == t.ids[order[k - 1]])
      throw MalformedSpec("groupoid table: duplicate arrow id '" + t.ids[order[k]] + "'");

  auto d = std::make_shared<Data>();
  d->ids.resize(N);
  d->src.resize(N);
  d->rng.resize(N);
  d->inv.resize(N);
  for (std::size_t a = 0; a < N; ++a) {
    d->ids[pos[a]] = t.ids[a];
    d->src[pos[a]] = pos[t.src[a]];
    d->rng[pos[a]] = pos[t.rng[a]];
    d->inv[pos[a]] = pos[t.inv[a]];
  }
  const auto& ids = d->ids;
  for (Arrow a = 0; a < N; ++a) {
    for (Arrow x : {d->src[a], d->rng[a]})
      if (d->src[x] != x || d->rng[x] != x)
        throw MalformedSpec("groupoid table: arrow '" + ids[a] + "' has endpoint '" + ids[x] +
                            "' which is not a unit");
    if (d->src[a] == a || d->rng[a] == a)
      if (d->src[a] != a || d->rng[a] != a)
        throw MalformedSpec("groupoid table: arrow '" + ids[a] + "' is its own endpoint but not a unit");
  }
  d->unit_ordinal.assign(N, SIZE_MAX);
  for (Arrow a = 0; a < N; ++a)
    if (d->src[a] == a) {
      d->unit_ordinal[a] = d->units.size();
      d->units.push_back(a);
    }
  const std::size_t U = d->units.size();
  d->range_fibers.resize(U);
  d->source_fibers.resize(U);
  d->range_pos.resize(N);
  d->source_pos.resize(N);
  for (Arrow a = 0; a < N; ++a) {
    auto& rf = d->range_fibers[d->unit_ordinal[d->rng[a]]];
    d->range_pos[a] = rf.size();
    rf.push_back(a);
    auto& sf = d->source_fibers[d->unit_ordinal[d->src[a]]];
    d->source_pos[a] = sf.size();
    sf.push_back(a);
  }
  d->table_offset.resize(N + 1);
  std::size_t offset = 0;
  for (Arrow g = 0; g < N; ++g) {
    d->table_offset[g] = offset;
    offset += d->range_fibers[d->unit_ordinal[d->src[g]]].size();
  }
  d->table_offset[N] = offset;
  d->table.resize(offset);
  for (std::size_t g0 = 0; g0 < N; ++g0) {
    const Arrow g = pos[g0];
    for (Arrow h : d->range_fibers[d->unit_ordinal[d->src[g]]]) {
      const std::size_t k0 = t.compose(g0, order[h]);
      if (k0 >= N)
        throw MalformedSpec("groupoid table: compose(" + ids[g] + ", " + ids[h] + ") undefined");
      const Arrow k = pos[k0];
      if (d->src[k] != d->src[h] || d->rng[k] != d->rng[g])
        throw MalformedSpec("groupoid table: compose(" + ids[g] + ", " + ids[h] + ") = " + ids[k] +
                            " has wrong source or range");
      d->table[d->table_offset[g] + d->range_pos[h]] = k;
    }
  }
  auto mul = [&](Arrow g, Arrow h) { return d->table[d->table_offset[g] + d->range_pos[h]]; };
  for (Arrow g = 0; g < N; ++g) {
    if (mul(d->rng[g], g) != g || mul(g, d->src[g]) != g)
      throw MalformedSpec("groupoid table: unit law fails for '" + ids[g] + "'");
    const Arrow gi = d->inv[g];
    if (d->inv[gi] != g) throw MalformedSpec("groupoid table: inv is not an involution at '" + ids[g] + "'");
    if (d->src[gi] != d->rng[g] || d->rng[gi] != d->src[g])
      throw MalformedSpec("groupoid table: inverse of '" + ids[g] + "' has wrong endpoints");
    if (mul(g, gi) != d->rng[g] || mul(gi, g) != d->src[g])
      throw MalformedSpec("groupoid table: '" + ids[gi] + "' is not inverse to '" + ids[g] + "'");
    if (d->src[g] == d->rng[g] && mul(g, g) == g && d->src[g] != g)
      throw MalformedSpec("groupoid table: idempotent '" + ids[g] + "' is not a unit");
  }
  for (Arrow g = 0; g < N; ++g)
    for (Arrow h : d->range_fibers[d->unit_ordinal[d->src[g]]]) {
      const Arrow gh = mul(g, h);
      for (Arrow k : d->range_fibers[d->unit_ordinal[d->src[h]]])
        if (mul(gh, k) != mul(g, mul(h, k)))
          throw MalformedSpec("groupoid table: composition not associative on (" + ids[g] + ", " +
                              ids[h] + ", " + ids[k] + ")");
    }
  d_ = std::move(d);
}

std::optional<Arrow> FiniteAmpleGroupoid::find(const std::string& id) const {
  auto it = std::lower_bound(d_->ids.begin(), d_->ids.end(), id);
  if (it == d_->ids.end() || *it != id) return std::nullopt;
  return static_cast<Arrow>(it - d_->ids.begin());
}

Arrow FiniteAmpleGroupoid::arrow(const std::string& id) const {
  auto a = find(id);
  if (!a) throw UnknownUnit("unknown arrow '" + id + "'");
  return *a;
}

std::optional<Arrow> FiniteAmpleGroupoid::compose(Arrow g, Arrow h) const {
  if (!composable(g, h)) return std::nullopt;
  return mul(g, h);
}

const std::vector<Arrow>& FiniteAmpleGroupoid::range_fiber(Arrow x) const {
  if (x >= size() || !is_unit(x)) throw UnknownUnit("not a unit: " + std::to_string(x));
  return d_->range_fibers[d_->unit_ordinal[x]];
}

const std::vector<Arrow>& FiniteAmpleGroupoid::source_fiber(Arrow x) const {
  if (x >= size() || !is_unit(x)) throw UnknownUnit("not a unit: " + std::to_string(x));
  return d_->source_fibers[d_->unit_ordinal[x]];
}

std::vector<Arrow> fiber(const FiniteAmpleGroupoid& G, Arrow x, FiberKind kind) {
  return kind == FiberKind::range ? G.range_fiber(x) : G.source_fiber(x);
}

// ---------------------------------------------------------------- subgroupoids

Subgroupoid::Subgroupoid(FiniteAmpleGroupoid G, std::vector<Arrow> members)
    : G_(std::move(G)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  mask_.assign(G_.size(), false);
  for (Arrow a : members_) {
    if (a >= G_.size()) throw MalformedSpec("subgroupoid member out of range");
    mask_[a] = true;
  }
  for (Arrow g : members_) {
    for (Arrow x : {G_.src(g), G_.rng(g)})
      if (!mask_[x])
        throw MalformedSpec("not a subgroupoid: unit " + G_.id(x) + " of member " + G_.id(g) +
                            " is missing");
    if (!mask_[G_.inv(g)])
      throw MalformedSpec("not a subgroupoid: inverse " + G_.id(G_.inv(g)) + " of " + G_.id(g) +
                          " is missing");
    for (Arrow h : G_.range_fiber(G_.src(g)))
      if (mask_[h] && !mask_[G_.mul(g, h)])
        throw MalformedSpec("not a subgroupoid: compose(" + G_.id(g) + ", " + G_.id(h) +
                            ") = " + G_.id(G_.mul(g, h)) + " is missing");
  }
  for (Arrow a : members_)
    if (G_.is_unit(a)) units_.push_back(a);
}

std::vector<Arrow> Subgroupoid::range_fiber(Arrow x) const {
  std::vector<Arrow> out;
  if (!contains(x)) return out;
  for (Arrow a : G_.range_fiber(x))
    if (mask_[a]) out.push_back(a);
  return out;
}

Subgroupoid generated_subgroupoid(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& S) {
  std::vector<bool> in(G.size(), false);
  std::vector<Arrow> members;
  auto add = [&](Arrow a) {
    if (a >= G.size()) throw MalformedSpec("generator out of range");
    if (!in[a]) {
      in[a] = true;
      members.push_back(a);
    }
  };
  for (Arrow a : S) {
    add(a);
    add(G.inv(a));
    add(G.src(a));
    add(G.rng(a));
  }
  // Each new product is composed against everything found so far.
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Arrow a = members[k];
    for (std::size_t j = 0; j <= k; ++j) {
      const Arrow b = members[j];
      if (G.composable(a, b)) add(G.mul(a, b));
      if (G.composable(b, a)) add(G.mul(b, a));
    }
  }
  return Subgroupoid(G, std::move(members));
}

Subgroupoid whole(const FiniteAmpleGroupoid& G) {
  std::vector<Arrow> all(G.size());
  std::iota(all.begin(), all.end(), 0);
  return Subgroupoid(G, std::move(all));
}

bool is_principal(const FiniteAmpleGroupoid& G) {
  for (Arrow a = 0; a < G.size(); ++a)
    if (G.src(a) == G.rng(a) && !G.is_unit(a)) return false;
  return true;
}

PrincipalBlockDecomposition principal_blocks(const Subgroupoid& H, bool maximal_basepoints) {
  const auto& G = H.parent();
  for (Arrow g : H.members())
    if (G.src(g) == G.rng(g) && !G.is_unit(g))
      throw NotPrincipal("isotropy arrow " + G.id(g) + " in subgroupoid");
  std::vector<Arrow> parent(G.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](Arrow x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Arrow g : H.members()) {
    Arrow a = root(G.src(g)), b = root(G.rng(g));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  PrincipalBlockDecomposition out;
  out.block_of.assign(G.size(), SIZE_MAX);
  out.tau_of.assign(G.size(), kNoArrow);
  std::map<Arrow, std::size_t> block_of_root;
  for (Arrow x : H.unit_space()) {
    const Arrow r = root(x);
    auto [it, fresh] = block_of_root.emplace(r, out.blocks.size());
    if (fresh) out.blocks.emplace_back();
    out.blocks[it->second].orbit_units.push_back(x);
    out.block_of[x] = it->second;
  }
  if (maximal_basepoints)
    for (auto& b : out.blocks) std::reverse(b.orbit_units.begin(), b.orbit_units.end());
  for (Arrow g : H.members()) {
    const std::size_t b = out.block_of[G.rng(g)];
    out.blocks[b].arrows.push_back(g);
    if (G.src(g) == out.blocks[b].basepoint()) out.tau_of[G.rng(g)] = g;
  }
  for (auto& b : out.blocks) {
    const std::size_t k = b.orbit_units.size();
    if (b.arrows.size() != k * k)
      throw NotPrincipal("block of " + G.id(b.basepoint()) + " is not a pair groupoid");
  }
  return out;
}

// ---------------------------------------------------------------- builders

FiniteAmpleGroupoid as_groupoid(const Subgroupoid& H) {
  const auto& G = H.parent();
  const auto& m = H.members();
  std::vector<std::size_t> local(G.size(), SIZE_MAX);
  for (std::size_t k = 0; k < m.size(); ++k) local[m[k]] = k;
  GroupoidTable t;
  for (Arrow a : m) {
    t.ids.push_back(G.id(a));
    t.src.push_back(local[G.src(a)]);
    t.rng.push_back(local[G.rng(a)]);
    t.inv.push_back(local[G.inv(a)]);
  }
  t.compose = [&](std::size_t g, std::size_t h) { return local[G.mul(m[g], m[h])]; };
  return FiniteAmpleGroupoid(t);
}

FiniteAmpleGroupoid pair_groupoid(const std::vector<std::string>& points) {
  const std::size_t n = points.size();
  GroupoidTable t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      t.ids.push_back("(" + points[i] + "," + points[j] + ")");
      t.rng.push_back(i * n + i);
      t.src.push_back(j * n + j);
      t.inv.push_back(j * n + i);
    }
  // (i,j)(j,k) = (i,k)
  t.compose = [n](std::size_t g, std::size_t h) { return (g / n) * n + (h % n); };
  return FiniteAmpleGroupoid(t);
}

FiniteAmpleGroupoid pair_groupoid(std::size_t n) {
  std::vector<std::string> pts;
  for (std::size_t i = 1; i <= n; ++i) pts.push_back(std::to_string(i));
  return pair_groupoid(pts);
}

FiniteAmpleGroupoid cyclic_group(std::size_t m) {
  if (m == 0) throw MalformedSpec("cyclic_group: m must be >= 1");
  GroupoidTable t;
  for (std::size_t i = 0; i < m; ++i) {
    t.ids.push_back("g" + std::to_string(i));
    t.src.push_back(0);
    t.rng.push_back(0);
    t.inv.push_back((m - i) % m);
  }
  t.compose = [m](std::size_t a, std::size_t b) { return (a + b) % m; };
  return FiniteAmpleGroupoid(t);
}

namespace {

std::map<std::string, std::size_t> index_names(const std::vector<std::string>& names,
                                               const std::string& what) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t k = 0; k < names.size(); ++k)
    if (!idx.emplace(names[k], k).second)
      throw MalformedSpec(what + ": duplicate name '" + names[k] + "'");
  return idx;
}

std::size_t lookup(const std::map<std::string, std::size_t>& idx, const std::string& name,
                   const std::string& what) {
  auto it = idx.find(name);
  if (it == idx.end()) throw MalformedSpec(what + ": unknown name '" + name + "'");
  return it->second;
}

// Full binary operation table from triples; every pair exactly once.
std::vector<std::size_t> operation_table(const std::map<std::string, std::size_t>& left,
                                         const std::map<std::string, std::size_t>& right,
                                         const std::map<std::string, std::size_t>& result,
                                         const std::vector<std::array<std::string, 3>>& triples,
                                         const std::string& what) {
  const std::size_t R = right.size();
  std::vector<std::size_t> table(left.size() * R, SIZE_MAX);
  for (const auto& tr : triples) {
    const std::size_t a = lookup(left, tr[0], what), b = lookup(right, tr[1], what);
    const std::size_t c = lookup(result, tr[2], what);
    if (table[a * R + b] != SIZE_MAX)
      throw MalformedSpec(what + ": pair (" + tr[0] + ", " + tr[1] + ") listed twice");
    table[a * R + b] = c;
  }
  for (const auto& [an, a] : left)
    for (const auto& [bn, b] : right)
      if (table[a * R + b] == SIZE_MAX)
        throw MalformedSpec(what + ": missing entry for (" + an + ", " + bn + ")");
  return table;
}

}  // namespace

FiniteAmpleGroupoid group_from_table(const std::vector<std::string>& elements,
                                     const std::vector<std::array<std::string, 3>>& mul) {
  const std::size_t n = elements.size();
  if (n == 0) throw MalformedSpec("group_table: no elements");
  auto idx = index_names(elements, "group_table");
  auto table = operation_table(idx, idx, idx, mul, "group_table");
  std::size_t e = SIZE_MAX;
  for (std::size_t c = 0; c < n && e == SIZE_MAX; ++c) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[c * n + a] == a && table[a * n + c] == a;
    if (ok) e = c;
  }
  if (e == SIZE_MAX) throw MalformedSpec("group_table: no identity element");
  GroupoidTable t;
  t.ids = elements;
  t.src.assign(n, e);
  t.rng.assign(n, e);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t inv = SIZE_MAX;
    for (std::size_t b = 0; b < n; ++b)
      if (table[a * n + b] == e && table[b * n + a] == e) inv = b;
    if (inv == SIZE_MAX) throw MalformedSpec("group_table: element '" + elements[a] + "' has no inverse");
    t.inv.push_back(inv);
  }
  t.compose = [table, n](std::size_t a, std::size_t b) { return table[a * n + b]; };
  return FiniteAmpleGroupoid(t);
}

FiniteAmpleGroupoid action_groupoid(const FiniteAmpleGroupoid& group,
                                    const std::vector<std::string>& points,
                                    const std::vector<std::array<std::string, 3>>& act) {
  if (group.unit_count() != 1) throw MalformedSpec("action: acting groupoid is not a group");
  const std::size_t m = group.size(), P = points.size();
  std::vector<std::string> names;
  for (Arrow g = 0; g < m; ++g) names.push_back(group.id(g));
  auto gidx = index_names(names, "action group");
  auto pidx = index_names(points, "action points");
  auto table = operation_table(gidx, pidx, pidx, act, "action");
  const Arrow e = group.units().front();
  for (Arrow g = 0; g < m; ++g) {
    std::vector<bool> hit(P, false);
    for (std::size_t x = 0; x < P; ++x) hit[table[g * P + x]] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw MalformedSpec("action: '" + group.id(g) + "' does not act by a bijection");
  }
  for (std::size_t x = 0; x < P; ++x) {
    if (table[e * P + x] != x)
      throw MalformedSpec("action: identity moves point '" + points[x] + "'");
    for (Arrow g = 0; g < m; ++g)
      for (Arrow h = 0; h < m; ++h)
        if (table[group.mul(g, h) * P + x] != table[g * P + table[h * P + x]])
          throw MalformedSpec("action: (" + group.id(g) + " " + group.id(h) + ")." + points[x] +
                              " != " + group.id(g) + ".(" + group.id(h) + "." + points[x] + ")");
  }
  // Arrow (g, x) has index g*P + x, source x and range g.x.
  GroupoidTable t;
  for (Arrow g = 0; g < m; ++g)
    for (std::size_t x = 0; x < P; ++x) {
      t.ids.push_back(g == e ? points[x] : group.id(g) + ":" + points[x]);
      t.src.push_back(e * P + x);
      t.rng.push_back(e * P + table[g * P + x]);
      t.inv.push_back(group.inv(g) * P + table[g * P + x]);
    }
  t.compose = [&group, P](std::size_t a, std::size_t b) {
    return group.mul(static_cast<Arrow>(a / P), static_cast<Arrow>(b / P)) * P + b % P;
  };
  return FiniteAmpleGroupoid(t);
}

FiniteAmpleGroupoid disjoint_union(const std::vector<FiniteAmpleGroupoid>& parts) {
  GroupoidTable t;
  std::vector<std::size_t> base;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    base.push_back(t.ids.size());
    const auto& G = parts[p];
    for (Arrow a = 0; a < G.size(); ++a) {
      t.ids.push_back(std::to_string(p) + "/" + G.id(a));
      t.src.push_back(base[p] + G.src(a));
      t.rng.push_back(base[p] + G.rng(a));
      t.inv.push_back(base[p] + G.inv(a));
    }
  }
  std::vector<std::size_t> part_of(t.ids.size());
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t a = 0; a < parts[p].size(); ++a) part_of[base[p] + a] = p;
  t.compose = [&](std::size_t g, std::size_t h) {
    const std::size_t p = part_of[g];
    return base[p] + parts[p].mul(static_cast<Arrow>(g - base[p]), static_cast<Arrow>(h - base[p]));
  };
  return FiniteAmpleGroupoid(t);
}

FiniteAmpleGroupoid restriction(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& units) {
  std::vector<bool> keep_unit(G.size(), false);
  for (Arrow x : units) {
    if (x >= G.size() || !G.is_unit(x)) throw UnknownUnit("restriction: not a unit");
    keep_unit[x] = true;
  }
  std::vector<Arrow> members;
  for (Arrow a = 0; a < G.size(); ++a)
    if (keep_unit[G.src(a)] && keep_unit[G.rng(a)]) members.push_back(a);
  return as_groupoid(Subgroupoid(G, members));
}

FiniteAmpleGroupoid from_explicit_table(const std::vector<std::string>& units,
                                        const std::vector<ExplicitArrow>& arrows,
                                        const std::vector<std::array<std::string, 3>>& compose) {
  std::vector<std::string> names;
  for (const auto& a : arrows) names.push_back(a.id);
  auto idx = index_names(names, "table");
  std::set<std::string> unit_set(units.begin(), units.end());
  if (unit_set.size() != units.size()) throw MalformedSpec("table: duplicate unit");
  GroupoidTable t;
  t.ids = names;
  for (const auto& a : arrows) {
    t.src.push_back(lookup(idx, a.src, "table src of " + a.id));
    t.rng.push_back(lookup(idx, a.rng, "table rng of " + a.id));
    t.inv.push_back(lookup(idx, a.inv, "table inv of " + a.id));
    if (!unit_set.count(a.src) || !unit_set.count(a.rng))
      throw MalformedSpec("table: endpoint of '" + a.id + "' is not listed as a unit");
  }
  for (const auto& u : units) {
    const std::size_t k = lookup(idx, u, "table units");
    if (t.src[k] != k || t.rng[k] != k)
      throw MalformedSpec("table: unit '" + u + "' must be its own source and range");
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  for (const auto& tr : compose) {
    const std::size_t g = lookup(idx, tr[0], "table compose"), h = lookup(idx, tr[1], "table compose");
    const std::size_t k = lookup(idx, tr[2], "table compose");
    if (t.src[g] != t.rng[h])
      throw MalformedSpec("table: compose lists non-composable pair (" + tr[0] + ", " + tr[1] + ")");
    if (!comp.emplace(std::make_pair(g, h), k).second)
      throw MalformedSpec("table: pair (" + tr[0] + ", " + tr[1] + ") listed twice");
  }
  t.compose = [&](std::size_t g, std::size_t h) {
    auto it = comp.find({g, h});
    if (it == comp.end())
      throw MalformedSpec("table: missing composition for (" + names[g] + ", " + names[h] + ")");
    return it->second;
  };
  return FiniteAmpleGroupoid(t);
}

FiniteAmpleGroupoid reassemble(const FiniteAmpleGroupoid& parent,
                               const PrincipalBlockDecomposition& blocks) {
  std::vector<FiniteAmpleGroupoid> parts;
  for (const auto& b : blocks.blocks) {
    std::vector<std::string> names;
    for (Arrow x : b.orbit_units) names.push_back(parent.id(x));
    parts.push_back(pair_groupoid(names));
  }
  return disjoint_union(parts);
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
  const FiniteAmpleGroupoid& G;
  const FiniteAmpleGroupoid& H;
  std::vector<Arrow> order;
  std::vector<Arrow> phi;
  std::vector<bool> used;

  bool consistent(Arrow g) const {
    const Arrow pg = phi[g];
    if (phi[G.inv(g)] != kNoArrow && phi[G.inv(g)] != H.inv(pg)) return false;
    for (Arrow b : G.range_fiber(G.src(g)))
      if (phi[b] != kNoArrow && phi[G.mul(g, b)] != kNoArrow && H.mul(pg, phi[b]) != phi[G.mul(g, b)])
        return false;
    for (Arrow a : G.source_fiber(G.rng(g)))
      if (phi[a] != kNoArrow && phi[G.mul(a, g)] != kNoArrow && H.mul(phi[a], pg) != phi[G.mul(a, g)])
        return false;
    for (Arrow a : G.range_fiber(G.rng(g))) {
      const Arrow b = G.mul(G.inv(a), g);
      if (phi[a] != kNoArrow && phi[b] != kNoArrow && H.mul(phi[a], phi[b]) != pg) return false;
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == order.size()) return true;
    const Arrow g = order[k];
    for (Arrow c = 0; c < H.size(); ++c) {
      if (used[c]) continue;
      if (G.is_unit(g)) {
        if (!H.is_unit(c) || G.range_fiber(g).size() != H.range_fiber(c).size() ||
            G.source_fiber(g).size() != H.source_fiber(c).size())
          continue;
      } else if (H.src(c) != phi[G.src(g)] || H.rng(c) != phi[G.rng(g)] || H.is_unit(c)) {
        continue;
      }
      phi[g] = c;
      used[c] = true;
      if (consistent(g) && extend(k + 1)) return true;
      phi[g] = kNoArrow;
      used[c] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Arrow>> find_isomorphism(const FiniteAmpleGroupoid& G,
                                                   const FiniteAmpleGroupoid& H) {
  if (G.size() != H.size() || G.unit_count() != H.unit_count()) return std::nullopt;
  IsoSearch s{G, H, {}, std::vector<Arrow>(G.size(), kNoArrow), std::vector<bool>(H.size(), false)};
  for (Arrow x : G.units()) s.order.push_back(x);
  for (Arrow a = 0; a < G.size(); ++a)
    if (!G.is_unit(a)) s.order.push_back(a);
  if (!s.extend(0)) return std::nullopt;
  return s.phi;
}

}  // namespace ghom
