#include "ghom/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace ghom {

namespace {

using Rows = std::vector<std::vector<Integer>>;

Rows identity_rows(std::size_t n) {
  Rows r(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

bool abs_less(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    // Both fit; compare magnitudes without negating INT64_MIN.
    const std::uint64_t x = a.small() < 0 ? 0 - static_cast<std::uint64_t>(a.small())
                                          : static_cast<std::uint64_t>(a.small());
    const std::uint64_t y = b.small() < 0 ? 0 - static_cast<std::uint64_t>(b.small())
                                          : static_cast<std::uint64_t>(b.small());
    return x < y;
  }
  return abs(a) < abs(b);
}

// Working state for dense reduction; transforms are tracked only on request.
class DenseSmith {
 public:
  DenseSmith(Rows a, std::size_t m, std::size_t n, const SmithOptions& opt)
      : a_(std::move(a)), m_(m), n_(n) {
    if (opt.want_u) U_ = identity_rows(m);
    if (opt.want_u_inverse) Ui_ = identity_rows(m);
    if (opt.want_v) V_ = identity_rows(n);
    if (opt.want_v_inverse) Vi_ = identity_rows(n);
  }

  void run() {
    const std::size_t limit = std::min(m_, n_);
    for (std::size_t t = 0; t < limit; ++t) {
      std::size_t pi, pj;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      reduce_at(t);
      if (a_[t][t].sign() < 0) negate_row(t);
    }
  }

  Rows& a() { return a_; }
  Rows U_, Ui_, V_, Vi_;

 private:
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    const Integer* best = nullptr;
    for (std::size_t i = t; i < m_; ++i)
      for (std::size_t j = t; j < n_; ++j) {
        const Integer& v = a_[i][j];
        if (v.is_zero()) continue;
        if (!best || abs_less(v, *best)) {
          best = &v;
          pi = i;
          pj = j;
          if (v.is_unit()) return true;
        }
      }
    return best != nullptr;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m_; ++i) {
        if (a_[i][t].is_zero()) continue;
        Integer q = tdiv(a_[i][t], a_[t][t]);
        if (!q.is_zero()) row_addmul(i, t, -q);
        if (!a_[i][t].is_zero()) dirty = true;
      }
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (a_[t][j].is_zero()) continue;
        Integer q = tdiv(a_[t][j], a_[t][t]);
        if (!q.is_zero()) col_addmul(j, t, -q);
        if (!a_[t][j].is_zero()) dirty = true;
      }
      if (dirty) {
        // A nonzero remainder is smaller than the pivot; move the smallest in.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m_; ++i)
          if (!a_[i][t].is_zero() && abs_less(a_[i][t], a_[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n_; ++j)
          if (!a_[t][j].is_zero() && abs_less(a_[t][j], a_[bi][bj])) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m_ && !fixed; ++i)
        for (std::size_t j = t + 1; j < n_; ++j)
          if (!divides(a_[t][t], a_[i][j])) {
            row_addmul(t, i, Integer(1));
            fixed = true;
            break;
          }
      if (!fixed) return;
    }
  }

  static void addmul_row(Rows& r, std::size_t dst, std::size_t src, const Integer& q) {
    auto& d = r[dst];
    const auto& s = r[src];
    for (std::size_t k = 0; k < d.size(); ++k)
      if (!s[k].is_zero()) d[k] += q * s[k];
  }
  static void addmul_col(Rows& r, std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : r)
      if (!row[src].is_zero()) row[dst] += q * row[src];
  }

  // row_i += q row_t
  void row_addmul(std::size_t i, std::size_t t, const Integer& q) {
    addmul_row(a_, i, t, q);
    if (!U_.empty()) addmul_row(U_, i, t, q);
    if (!Ui_.empty()) addmul_col(Ui_, t, i, -q);
  }
  // col_j += q col_t
  void col_addmul(std::size_t j, std::size_t t, const Integer& q) {
    addmul_col(a_, j, t, q);
    if (!V_.empty()) addmul_col(V_, j, t, q);
    if (!Vi_.empty()) addmul_row(Vi_, t, j, -q);
  }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    std::swap(a_[i], a_[k]);
    if (!U_.empty()) std::swap(U_[i], U_[k]);
    if (!Ui_.empty())
      for (auto& row : Ui_) std::swap(row[i], row[k]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (auto& row : a_) std::swap(row[j], row[k]);
    if (!V_.empty())
      for (auto& row : V_) std::swap(row[j], row[k]);
    if (!Vi_.empty()) std::swap(Vi_[j], Vi_[k]);
  }
  void negate_row(std::size_t t) {
    for (auto& v : a_[t]) v = -v;
    if (!U_.empty())
      for (auto& v : U_[t]) v = -v;
    if (!Ui_.empty())
      for (auto& row : Ui_) row[t] = -row[t];
  }

  Rows a_;
  std::size_t m_, n_;
};

std::vector<Integer> dense_factors(Rows a, std::size_t m, std::size_t n) {
  SmithOptions none{false, false, false, false};
  DenseSmith s(std::move(a), m, n, none);
  s.run();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    if (s.a()[t][t].is_zero()) break;
    out.push_back(s.a()[t][t]);
  }
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A, const SmithOptions& options) {
  const std::size_t m = A.rows(), n = A.cols();
  DenseSmith s(A.to_rows(), m, n, options);
  s.run();
  SmithForm out;
  out.D = IntMatrix::from_rows(s.a(), n);
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    out.diagonal.push_back(s.a()[t][t]);
    if (!s.a()[t][t].is_zero()) ++out.rank;
  }
  if (options.want_u) out.U = IntMatrix::from_rows(s.U_, m);
  if (options.want_u_inverse) out.U_inverse = IntMatrix::from_rows(s.Ui_, m);
  if (options.want_v) out.V = IntMatrix::from_rows(s.V_, n);
  if (options.want_v_inverse) out.V_inverse = IntMatrix::from_rows(s.Vi_, n);
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& A) {
  // Lines are the columns of A; invariant factors are transpose-invariant.
  using Line = std::vector<std::pair<std::uint32_t, Integer>>;
  const std::size_t L = A.cols(), W = A.rows();
  std::vector<Line> lines(L);
  std::vector<std::vector<std::uint32_t>> occupancy(W);
  std::vector<std::size_t> count(W, 0);
  for (std::size_t j = 0; j < L; ++j)
    A.for_each_in_column(j, [&](std::size_t i, const Integer& v) {
      lines[j].push_back({static_cast<std::uint32_t>(i), v});
      occupancy[i].push_back(static_cast<std::uint32_t>(j));
      ++count[i];
    });
  std::vector<char> line_alive(L, 1), slot_alive(W, 1);
  std::size_t units = 0;

  auto find_in = [](const Line& line, std::uint32_t c) -> const Integer* {
    auto it = std::lower_bound(line.begin(), line.end(), c,
                               [](const auto& e, std::uint32_t k) { return e.first < k; });
    return (it != line.end() && it->first == c) ? &it->second : nullptr;
  };

  Line merged;
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (std::size_t r = 0; r < L; ++r)
      if (line_alive[r] && !lines[r].empty()) order.push_back(static_cast<std::uint32_t>(r));
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      return lines[x].size() < lines[y].size();
    });
    for (std::uint32_t r : order) {
      if (!line_alive[r] || lines[r].empty()) continue;
      std::uint32_t c = UINT32_MAX;
      for (const auto& [k, v] : lines[r])
        if (v.is_unit() && (c == UINT32_MAX || count[k] < count[c])) c = k;
      if (c == UINT32_MAX) continue;
      const Line pivot = lines[r];
      const Integer pv = *find_in(pivot, c);
      const std::vector<std::uint32_t> hits = occupancy[c];
      for (std::uint32_t r2 : hits) {
        if (r2 == r || !line_alive[r2]) continue;
        const Integer* w = find_in(lines[r2], c);
        if (!w) continue;
        const Integer factor = *w * pv;  // pv = +-1, so w / pv = w * pv
        Line& target = lines[r2];
        merged.clear();
        std::size_t p = 0, q = 0;
        while (p < target.size() || q < pivot.size()) {
          if (q == pivot.size() || (p < target.size() && target[p].first < pivot[q].first)) {
            merged.push_back(std::move(target[p++]));
          } else if (p == target.size() || pivot[q].first < target[p].first) {
            const std::uint32_t k = pivot[q].first;
            merged.push_back({k, -(factor * pivot[q].second)});
            occupancy[k].push_back(r2);
            ++count[k];
            ++q;
          } else {
            const std::uint32_t k = target[p].first;
            Integer v = target[p].second - factor * pivot[q].second;
            if (v.is_zero())
              --count[k];
            else
              merged.push_back({k, std::move(v)});
            ++p;
            ++q;
          }
        }
        target.swap(merged);
      }
      line_alive[r] = 0;
      for (const auto& e : pivot) --count[e.first];
      slot_alive[c] = 0;
      occupancy[c].clear();
      occupancy[c].shrink_to_fit();
      ++units;
      progress = true;
    }
  }

  // Dense remainder.
  std::vector<std::uint32_t> rest_lines, rest_slots;
  std::vector<std::int64_t> slot_pos(W, -1);
  for (std::size_t r = 0; r < L; ++r)
    if (line_alive[r] && !lines[r].empty()) {
      rest_lines.push_back(static_cast<std::uint32_t>(r));
      for (const auto& e : lines[r])
        if (slot_pos[e.first] < 0) {
          slot_pos[e.first] = 0;
          rest_slots.push_back(e.first);
        }
    }
  std::sort(rest_slots.begin(), rest_slots.end());
  for (std::size_t k = 0; k < rest_slots.size(); ++k)
    slot_pos[rest_slots[k]] = static_cast<std::int64_t>(k);
  Rows dense(rest_lines.size(), std::vector<Integer>(rest_slots.size(), Integer(0)));
  for (std::size_t k = 0; k < rest_lines.size(); ++k)
    for (const auto& e : lines[rest_lines[k]]) dense[k][slot_pos[e.first]] = e.second;

  std::vector<Integer> out(units, Integer(1));
  for (auto& d : dense_factors(std::move(dense), rest_lines.size(), rest_slots.size()))
    out.push_back(std::move(d));
  return out;
}

}  // namespace ghom
