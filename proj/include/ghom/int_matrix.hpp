#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghom/integer.hpp"

namespace ghom {

// Integer matrix. Below 64x64 entries live in a dense row-major array,
// otherwise as sorted sparse columns. The choice is invisible to callers.
class IntMatrix {
 public:
  struct Entry {
    std::size_t row;
    Integer value;
  };
  using Column = std::vector<Entry>;

  static constexpr std::size_t kDenseLimit = 64;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
  // Entries may be unsorted, repeated (summed) or zero (dropped).
  static IntMatrix from_columns(std::size_t rows, std::vector<Column> columns);
  // Column j holds +1 at row images[j]; used for pushforwards of set maps.
  static IntMatrix from_function(std::size_t rows, const std::vector<std::size_t>& images);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool dense() const { return dense_; }

  Integer at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Integer& v);

  template <class F>
  void for_each_in_column(std::size_t j, F&& f) const {
    if (dense_) {
      for (std::size_t i = 0; i < rows_; ++i) {
        const Integer& v = data_[i * cols_ + j];
        if (!v.is_zero()) f(i, v);
      }
    } else {
      for (const Entry& e : columns_[j]) f(e.row, e.value);
    }
  }
  Column column(std::size_t j) const;

  std::size_t nonzero_count() const;
  bool is_zero() const { return nonzero_count() == 0; }
  bool is_identity() const;

  IntMatrix transpose() const;
  std::vector<std::vector<Integer>> to_rows() const;
  IntMatrix select_columns(const std::vector<std::size_t>& which) const;
  IntMatrix select_rows(const std::vector<std::size_t>& which) const;

  IntMatrix operator-() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  struct Difference {
    std::size_t row, col;
    Integer lhs, rhs;
  };
  // First differing entry in row-major order; dimensions must agree.
  std::optional<Difference> first_difference(const IntMatrix& other) const;

  std::string str() const;

 private:
  void adopt_columns(std::vector<Column> columns);

  std::size_t rows_ = 0, cols_ = 0;
  bool dense_ = true;
  std::vector<Integer> data_;
  std::vector<Column> columns_;
};

}  // namespace ghom
