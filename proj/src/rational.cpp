#include "ddrf/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace ddrf {

namespace {

// mpz RAII helper for the decimal renderer.
struct Mpz {
  mpz_t z;
  Mpz() { mpz_init(z); }
  explicit Mpz(unsigned long v) { mpz_init_set_ui(z, v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  ~Mpz() { mpz_clear(z); }
};

bool is_integer_token(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_init(value_);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpq_set_si(value_, num, static_cast<unsigned long>(den));
  mpq_canonicalize(value_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  Rational r;
  mpq_div(r.value_, a.value_, b.value_);
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(value_, value_, o.value_);
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  std::string_view num_part = text;
  std::string_view den_part;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num_part = text.substr(0, slash);
    den_part = text.substr(slash + 1);
    if (den_part.empty() || den_part.front() == '-' ||
        !is_integer_token(den_part)) {
      return std::nullopt;
    }
  }
  if (!is_integer_token(num_part)) return std::nullopt;

  Rational r;
  // Tokens are validated above, so set_str cannot fail or skip characters.
  mpz_set_str(mpq_numref(r.value_), std::string(num_part).c_str(), 10);
  if (!den_part.empty()) {
    mpz_set_str(mpq_denref(r.value_), std::string(den_part).c_str(), 10);
    if (mpz_sgn(mpq_denref(r.value_)) == 0) return std::nullopt;
  }
  mpq_canonicalize(r.value_);
  return r;
}

std::string Rational::str() const {
  char* raw = mpq_get_str(nullptr, 10, value_);
  std::string out(raw);
  free(raw);  // NOLINT: GMP allocates with malloc
  return out;
}

Rational Rational::numerator() const {
  Rational r;
  mpq_set_z(r.value_, mpq_numref(value_));
  return r;
}

Rational Rational::denominator() const {
  Rational r;
  mpq_set_z(r.value_, mpq_denref(value_));
  return r;
}

std::string Rational::decimal(int significant_digits) const {
  const int sig = significant_digits < 1 ? 1 : significant_digits;
  if (is_zero()) return "0";

  Mpz p;
  mpz_abs(p.z, mpq_numref(value_));
  mpz_srcptr q = mpq_denref(value_);

  // Exponent e with 10^e <= p/q < 10^(e+1), found by digit-count estimate
  // plus exact comparisons.
  long e = static_cast<long>(mpz_sizeinbase(p.z, 10)) -
           static_cast<long>(mpz_sizeinbase(q, 10));
  auto value_below_pow10 = [&](long exp) {
    // p/q < 10^exp ?
    Mpz lhs, rhs;
    if (exp >= 0) {
      mpz_ui_pow_ui(rhs.z, 10, static_cast<unsigned long>(exp));
      mpz_mul(rhs.z, rhs.z, q);
      return mpz_cmp(p.z, rhs.z) < 0;
    }
    mpz_ui_pow_ui(lhs.z, 10, static_cast<unsigned long>(-exp));
    mpz_mul(lhs.z, lhs.z, p.z);
    return mpz_cmp(lhs.z, q) < 0;
  };
  while (value_below_pow10(e)) --e;
  while (!value_below_pow10(e + 1)) ++e;

  // Mantissa = round_half_even(p * 10^(sig-1-e) / q), an integer in
  // [10^(sig-1), 10^sig].
  const long shift = sig - 1 - e;
  Mpz scaled_num, divisor, quot, rem;
  if (shift >= 0) {
    mpz_ui_pow_ui(scaled_num.z, 10, static_cast<unsigned long>(shift));
    mpz_mul(scaled_num.z, scaled_num.z, p.z);
    mpz_set(divisor.z, q);
  } else {
    mpz_set(scaled_num.z, p.z);
    mpz_ui_pow_ui(divisor.z, 10, static_cast<unsigned long>(-shift));
    mpz_mul(divisor.z, divisor.z, q);
  }
  mpz_fdiv_qr(quot.z, rem.z, scaled_num.z, divisor.z);
  Mpz twice_rem;
  mpz_mul_2exp(twice_rem.z, rem.z, 1);
  int cmp = mpz_cmp(twice_rem.z, divisor.z);
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(quot.z))) {
    mpz_add_ui(quot.z, quot.z, 1);
  }
  long exponent = e;
  Mpz overflow_bound;
  mpz_ui_pow_ui(overflow_bound.z, 10, static_cast<unsigned long>(sig));
  if (mpz_cmp(quot.z, overflow_bound.z) >= 0) {
    mpz_divexact_ui(quot.z, quot.z, 10);
    ++exponent;
  }

  char* raw = mpz_get_str(nullptr, 10, quot.z);
  std::string digits(raw);
  free(raw);  // NOLINT

  std::string out = sign() < 0 ? "-" : "";
  if (exponent >= 0 && exponent < sig) {
    out += digits.substr(0, exponent + 1);
    if (exponent + 1 < sig) out += "." + digits.substr(exponent + 1);
  } else if (exponent < 0 && exponent >= -6) {
    out += "0.";
    out.append(static_cast<size_t>(-exponent - 1), '0');
    out += digits;
  } else {
    out += digits.substr(0, 1);
    if (sig > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exponent);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace ddrf
