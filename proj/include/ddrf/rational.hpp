#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace ddrf {

/// Exact arbitrary-precision rational, always kept in canonical form
/// (reduced, positive denominator). All allocation and fairness arithmetic
/// in this project runs on this type; doubles appear only at reporting
/// boundaries.
class Rational {
 public:
  Rational() { mpq_init(value_); }

  Rational(long n) {  // NOLINT(google-explicit-constructor)
    mpq_init(value_);
    mpq_set_si(value_, n, 1);
  }

  Rational(int n) : Rational(static_cast<long>(n)) {}  // NOLINT

  Rational(long num, long den);

  Rational(const Rational& other) {
    mpq_init(value_);
    mpq_set(value_, other.value_);
  }

  Rational(Rational&& other) noexcept {
    mpq_init(value_);
    mpq_swap(value_, other.value_);
  }

  Rational& operator=(const Rational& other) {
    mpq_set(value_, other.value_);
    return *this;
  }

  Rational& operator=(Rational&& other) noexcept {
    mpq_swap(value_, other.value_);
    return *this;
  }

  ~Rational() { mpq_clear(value_); }

  /// Parses "p", "-p", or "p/q" (decimal digits only, no whitespace).
  /// Returns nullopt on malformed text or a zero denominator.
  static std::optional<Rational> parse(std::string_view text);

  /// Canonical text form: "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  /// Decimal rendering with the given number of significant digits,
  /// round-half-even. Exact trailing zeros are kept so the digit count is
  /// always explicit, e.g. (17/20).decimal(4) == "0.8500".
  std::string decimal(int significant_digits) const;

  double to_double() const { return mpq_get_d(value_); }

  Rational numerator() const;
  Rational denominator() const;

  int sign() const { return mpq_sgn(value_); }
  bool is_zero() const { return mpq_sgn(value_) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.value_, a.value_, b.value_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.value_, a.value_, b.value_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.value_, a.value_, b.value_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational operator-() const {
    Rational r;
    mpq_neg(r.value_, value_);
    return r;
  }

  Rational& operator+=(const Rational& o) {
    mpq_add(value_, value_, o.value_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(value_, value_, o.value_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(value_, value_, o.value_);
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.value_, b.value_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.value_, b.value_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.value_, b.value_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return mpq_cmp(a.value_, b.value_) > 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.value_, b.value_) >= 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_t value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

}  // namespace ddrf
