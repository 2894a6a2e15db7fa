#pragma once

// Arbitrary-precision real scalar backed by MPFR.
//
// Every HPReal carries its own precision. Binary operations round to the
// larger precision of the two operands, so there is no hidden global
// precision state: a PrecisionContext decides the precision when a value is
// first created and arithmetic preserves it from there on.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace stehfest {

class HPReal {
 public:
  /// Zero at the given binary precision.
  explicit HPReal(mpfr_prec_t bits = 64);
  HPReal(long value, mpfr_prec_t bits);
  HPReal(int value, mpfr_prec_t bits) : HPReal(static_cast<long>(value), bits) {}
  HPReal(double value, mpfr_prec_t bits);
  HPReal(const mpz_class& value, mpfr_prec_t bits);
  HPReal(const mpq_class& value, mpfr_prec_t bits);
  /// Parses a decimal string such as "2.5", "-1e-3" or "1/7" (exact ratio).
  HPReal(std::string_view text, mpfr_prec_t bits);

  HPReal(const HPReal& other);
  HPReal(HPReal&& other) noexcept;
  HPReal& operator=(const HPReal& other);
  HPReal& operator=(HPReal&& other) noexcept;
  ~HPReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  /// Same value rounded to a new precision.
  HPReal rounded(mpfr_prec_t bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr raw() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
  /// Decimal representation with `digits` significant digits, scientific form.
  std::string to_string(int digits) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  /// -1, 0 or +1.
  int sign() const { return mpfr_sgn(value_); }
  bool signbit() const { return mpfr_signbit(value_) != 0; }
  /// Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1.
  long exponent() const;

  HPReal operator-() const;
  HPReal& operator+=(const HPReal& rhs);
  HPReal& operator-=(const HPReal& rhs);
  HPReal& operator*=(const HPReal& rhs);
  HPReal& operator/=(const HPReal& rhs);
  HPReal& operator+=(long rhs);
  HPReal& operator-=(long rhs);
  HPReal& operator*=(long rhs);
  HPReal& operator/=(long rhs);

  friend HPReal operator+(HPReal lhs, const HPReal& rhs);
  friend HPReal operator-(HPReal lhs, const HPReal& rhs);
  friend HPReal operator*(HPReal lhs, const HPReal& rhs);
  friend HPReal operator/(HPReal lhs, const HPReal& rhs);
  friend HPReal operator+(HPReal lhs, long rhs) { return lhs += rhs; }
  friend HPReal operator-(HPReal lhs, long rhs) { return lhs -= rhs; }
  friend HPReal operator*(HPReal lhs, long rhs) { return lhs *= rhs; }
  friend HPReal operator/(HPReal lhs, long rhs) { return lhs /= rhs; }
  friend HPReal operator+(long lhs, HPReal rhs) { return rhs += lhs; }
  friend HPReal operator-(long lhs, const HPReal& rhs);
  friend HPReal operator*(long lhs, HPReal rhs) { return rhs *= lhs; }
  friend HPReal operator/(long lhs, const HPReal& rhs);

  friend bool operator==(const HPReal& a, const HPReal& b);
  friend std::partial_ordering operator<=>(const HPReal& a, const HPReal& b);
  friend bool operator==(const HPReal& a, long b);
  friend std::partial_ordering operator<=>(const HPReal& a, long b);

 private:
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const HPReal& x);

HPReal abs(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal exp(const HPReal& x);
HPReal expm1(const HPReal& x);
HPReal log(const HPReal& x);
HPReal log1p(const HPReal& x);
HPReal log2(const HPReal& x);
HPReal log10(const HPReal& x);
HPReal sin(const HPReal& x);
HPReal cos(const HPReal& x);
HPReal tan(const HPReal& x);
HPReal sinh(const HPReal& x);
HPReal cosh(const HPReal& x);
HPReal tanh(const HPReal& x);
HPReal asinh(const HPReal& x);
HPReal atan2(const HPReal& y, const HPReal& x);
HPReal hypot(const HPReal& x, const HPReal& y);
HPReal pow(const HPReal& base, const HPReal& exponent);
HPReal pow(const HPReal& base, long exponent);
HPReal floor(const HPReal& x);
HPReal ceil(const HPReal& x);
HPReal max(const HPReal& a, const HPReal& b);
HPReal min(const HPReal& a, const HPReal& b);

HPReal const_pi(mpfr_prec_t bits);
HPReal const_ln2(mpfr_prec_t bits);
HPReal const_e(mpfr_prec_t bits);

}  // namespace stehfest
