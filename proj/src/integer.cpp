#include "ghom/integer.hpp"

#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ghom/errors.hpp"

namespace ghom {

static_assert(sizeof(long) == 8, "GMP si conversions assume 64-bit long");

Integer::Integer(const mpz_class& v) : Integer(normalize(v)) {}

Integer Integer::normalize(mpz_class v) {
  Integer out;
  if (mpz_fits_slong_p(v.get_mpz_t()))
    out.rep_ = static_cast<std::int64_t>(v.get_si());
  else
    out.rep_ = std::move(v);
  return out;
}

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("bad integer literal '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw ParseError("bad integer literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return normalize(mpz_class(s, 10));
}

mpz_class Integer::to_mpz() const {
  if (is_small()) return mpz_class(static_cast<long>(small()));
  return std::get<mpz_class>(rep_);
}

int Integer::sign() const noexcept {
  if (is_small()) return (small() > 0) - (small() < 0);
  return sgn(std::get<mpz_class>(rep_));
}

Integer Integer::operator-() const {
  if (is_small() && small() != std::numeric_limits<std::int64_t>::min()) return Integer(-small());
  return normalize(-to_mpz());
}

Integer& Integer::operator+=(const Integer& o) {
  if (is_small() && o.is_small()) {
    std::int64_t r;
    if (!__builtin_add_overflow(small(), o.small(), &r)) {
      rep_ = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (is_small() && o.is_small()) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small(), o.small(), &r)) {
      rep_ = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (is_small() && o.is_small()) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small(), o.small(), &r)) {
      rep_ = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() * o.to_mpz());
  return *this;
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  // Normalization makes the representation canonical.
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.small() == b.small();
  return cmp(std::get<mpz_class>(a.rep_), std::get<mpz_class>(b.rep_)) == 0;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (a.is_small() && b.is_small()) return a.small() <=> b.small();
  const int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Integer::str() const {
  if (is_small()) return std::to_string(small());
  return std::get<mpz_class>(rep_).get_str(10);
}

std::size_t Integer::hash() const noexcept {
  if (is_small()) return std::hash<std::int64_t>{}(small());
  return std::hash<std::string>{}(str());
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer tdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() &&
      !(a.small() == std::numeric_limits<std::int64_t>::min() && b.small() == -1))
    return Integer(a.small() / b.small());
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer trem(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small() == -1) return Integer(0);
    return Integer(a.small() % b.small());
  }
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

Integer fdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer fmod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() && b.small() > 0) {
    std::int64_t r = a.small() % b.small();
    if (r < 0) r += b.small();
    return Integer(r);
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small() != std::numeric_limits<std::int64_t>::min() &&
      b.small() != std::numeric_limits<std::int64_t>::min()) {
    std::int64_t x = a.small() < 0 ? -a.small() : a.small();
    std::int64_t y = b.small() < 0 ? -b.small() : b.small();
    while (y != 0) {
      const std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return trem(a, d).is_zero();
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

}  // namespace ghom
