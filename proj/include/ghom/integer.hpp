#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace ghom {

// Arbitrary-precision integer. Values that fit in int64 stay inline; every
// operation checks for overflow and falls back to GMP, so results are exact.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : rep_(static_cast<std::int64_t>(v)) {}
  Integer(long v) noexcept : rep_(static_cast<std::int64_t>(v)) {}
  Integer(long long v) noexcept : rep_(static_cast<std::int64_t>(v)) {}
  explicit Integer(const mpz_class& v);

  // Decimal with optional sign; throws std::invalid_argument.
  static Integer parse(std::string_view text);

  bool is_small() const noexcept { return std::holds_alternative<std::int64_t>(rep_); }
  std::int64_t small() const noexcept { return std::get<std::int64_t>(rep_); }
  mpz_class to_mpz() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return is_small() && small() == 0; }
  bool is_unit() const noexcept { return is_small() && (small() == 1 || small() == -1); }

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  std::string str() const;
  std::size_t hash() const noexcept;

 private:
  static Integer normalize(mpz_class v);
  std::variant<std::int64_t, mpz_class> rep_{std::int64_t{0}};
};

Integer abs(const Integer& a);
// Truncating division; b must be nonzero.
Integer tdiv(const Integer& a, const Integer& b);
Integer trem(const Integer& a, const Integer& b);
// Floor division and the matching non-negative remainder for positive b.
Integer fdiv(const Integer& a, const Integer& b);
Integer fmod(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace ghom
