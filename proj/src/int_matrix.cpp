#include "ghom/int_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "ghom/errors.hpp"
#include "ghom/runtime.hpp"

namespace ghom {

namespace {

bool use_dense(std::size_t rows, std::size_t cols) {
  return rows < IntMatrix::kDenseLimit && cols < IntMatrix::kDenseLimit;
}

void normalize_column(IntMatrix::Column& col) {
  std::sort(col.begin(), col.end(),
            [](const IntMatrix::Entry& a, const IntMatrix::Entry& b) { return a.row < b.row; });
  std::size_t out = 0;
  for (std::size_t k = 0; k < col.size();) {
    std::size_t row = col[k].row;
    Integer sum = std::move(col[k].value);
    ++k;
    while (k < col.size() && col[k].row == row) sum += col[k++].value;
    if (!sum.is_zero()) col[out++] = {row, std::move(sum)};
  }
  col.resize(out);
}

std::string dims(const IntMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), dense_(use_dense(rows, cols)) {
  if (dense_)
    data_.assign(rows * cols, Integer(0));
  else
    columns_.assign(cols, {});
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (cols == 0 && !rows.empty()) cols = rows.front().size();
  std::vector<Column> columns(cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged rows in matrix literal");
    for (std::size_t j = 0; j < cols; ++j)
      if (!rows[i][j].is_zero()) columns[j].push_back({i, rows[i][j]});
  }
  return from_columns(rows.size(), std::move(columns));
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::vector<Column> columns) {
  for (auto& c : columns) {
    normalize_column(c);
    if (!c.empty() && c.back().row >= rows) throw IndexOutOfRange("matrix row index out of range");
  }
  IntMatrix m;
  m.rows_ = rows;
  m.cols_ = columns.size();
  m.adopt_columns(std::move(columns));
  return m;
}

IntMatrix IntMatrix::from_function(std::size_t rows, const std::vector<std::size_t>& images) {
  std::vector<Column> columns(images.size());
  for (std::size_t j = 0; j < images.size(); ++j) columns[j].push_back({images[j], Integer(1)});
  return from_columns(rows, std::move(columns));
}

void IntMatrix::adopt_columns(std::vector<Column> columns) {
  dense_ = use_dense(rows_, cols_);
  if (dense_) {
    data_.assign(rows_ * cols_, Integer(0));
    for (std::size_t j = 0; j < cols_; ++j)
      for (auto& e : columns[j]) data_[e.row * cols_ + j] = std::move(e.value);
    columns_.clear();
  } else {
    columns_ = std::move(columns);
    data_.clear();
  }
}

Integer IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index out of range");
  if (dense_) return data_[i * cols_ + j];
  const Column& c = columns_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == i) return it->value;
  return Integer(0);
}

void IntMatrix::set(std::size_t i, std::size_t j, const Integer& v) {
  if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index out of range");
  if (dense_) {
    data_[i * cols_ + j] = v;
    return;
  }
  Column& c = columns_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == i) {
    if (v.is_zero())
      c.erase(it);
    else
      it->value = v;
  } else if (!v.is_zero()) {
    c.insert(it, Entry{i, v});
  }
}

IntMatrix::Column IntMatrix::column(std::size_t j) const {
  Column out;
  for_each_in_column(j, [&](std::size_t i, const Integer& v) { out.push_back({i, v}); });
  return out;
}

std::size_t IntMatrix::nonzero_count() const {
  if (dense_)
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](const Integer& v) { return !v.is_zero(); }));
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t j = 0; j < cols_; ++j) {
    bool ok = true;
    std::size_t seen = 0;
    for_each_in_column(j, [&](std::size_t i, const Integer& v) {
      ++seen;
      if (i != j || v != Integer(1)) ok = false;
    });
    if (!ok || seen != 1) return false;
  }
  return true;
}

IntMatrix IntMatrix::transpose() const {
  std::vector<Column> columns(rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for_each_in_column(j, [&](std::size_t i, const Integer& v) { columns[i].push_back({j, v}); });
  IntMatrix m;
  m.rows_ = cols_;
  m.cols_ = rows_;
  m.adopt_columns(std::move(columns));
  return m;
}

std::vector<std::vector<Integer>> IntMatrix::to_rows() const {
  std::vector<std::vector<Integer>> out(rows_, std::vector<Integer>(cols_, Integer(0)));
  for (std::size_t j = 0; j < cols_; ++j)
    for_each_in_column(j, [&](std::size_t i, const Integer& v) { out[i][j] = v; });
  return out;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& which) const {
  std::vector<Column> columns;
  columns.reserve(which.size());
  for (std::size_t j : which) {
    if (j >= cols_) throw IndexOutOfRange("column selection out of range");
    columns.push_back(column(j));
  }
  return from_columns(rows_, std::move(columns));
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& which) const {
  std::vector<std::size_t> new_index(rows_, SIZE_MAX);
  for (std::size_t k = 0; k < which.size(); ++k) {
    if (which[k] >= rows_) throw IndexOutOfRange("row selection out of range");
    new_index[which[k]] = k;
  }
  std::vector<Column> columns(cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for_each_in_column(j, [&](std::size_t i, const Integer& v) {
      if (new_index[i] != SIZE_MAX) columns[j].push_back({new_index[i], v});
    });
  return from_columns(which.size(), std::move(columns));
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix m = *this;
  if (m.dense_)
    for (auto& v : m.data_) v = -v;
  else
    for (auto& c : m.columns_)
      for (auto& e : c) e.value = -e.value;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("cannot multiply " + dims(a) + " by " + dims(b));
  const std::size_t n = b.cols();
  std::vector<IntMatrix::Column> columns(n);
  // Column-at-a-time with a scatter accumulator per chunk.
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<Integer> acc(a.rows());
    std::vector<char> touched(a.rows(), 0);
    std::vector<std::size_t> rows_hit;
    for (std::size_t j = begin; j < end; ++j) {
      rows_hit.clear();
      b.for_each_in_column(j, [&](std::size_t k, const Integer& bv) {
        a.for_each_in_column(k, [&](std::size_t i, const Integer& av) {
          if (!touched[i]) {
            touched[i] = 1;
            rows_hit.push_back(i);
            acc[i] = av * bv;
          } else {
            acc[i] += av * bv;
          }
        });
      });
      std::sort(rows_hit.begin(), rows_hit.end());
      auto& col = columns[j];
      for (std::size_t i : rows_hit) {
        if (!acc[i].is_zero()) col.push_back({i, std::move(acc[i])});
        acc[i] = Integer(0);
        touched[i] = 0;
      }
    }
  });
  return IntMatrix::from_columns(a.rows(), std::move(columns));
}

namespace {
IntMatrix combine(const IntMatrix& a, const IntMatrix& b, bool subtract) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("cannot add " + dims(a) + " and " + dims(b));
  std::vector<IntMatrix::Column> columns(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto& col = columns[j];
    a.for_each_in_column(j, [&](std::size_t i, const Integer& v) { col.push_back({i, v}); });
    b.for_each_in_column(j, [&](std::size_t i, const Integer& v) {
      col.push_back({i, subtract ? -v : v});
    });
  }
  return IntMatrix::from_columns(a.rows(), std::move(columns));
}
}  // namespace

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) { return combine(a, b, false); }
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return combine(a, b, true); }

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return !a.first_difference(b).has_value();
}

std::optional<IntMatrix::Difference> IntMatrix::first_difference(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch("cannot compare " + dims(*this) + " with " + dims(other));
  std::optional<Difference> best;
  for (std::size_t j = 0; j < cols_; ++j) {
    Column x = column(j), y = other.column(j);
    std::size_t p = 0, q = 0;
    while (p < x.size() || q < y.size()) {
      std::size_t i;
      Integer lv(0), rv(0);
      if (q == y.size() || (p < x.size() && x[p].row < y[q].row)) {
        i = x[p].row;
        lv = x[p++].value;
      } else if (p == x.size() || y[q].row < x[p].row) {
        i = y[q].row;
        rv = y[q++].value;
      } else {
        i = x[p].row;
        lv = x[p++].value;
        rv = y[q++].value;
      }
      if (lv != rv) {
        if (!best || i < best->row) best = Difference{i, j, lv, rv};
        break;
      }
    }
  }
  return best;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (const auto& row : to_rows()) {
    os << "[";
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "]\n";
  }
  return os.str();
}

}  // namespace ghom
