#include "stehfest/hpreal.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace stehfest {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_prec_t wider(const HPReal& a, const HPReal& b) {
  return std::max(a.precision(), b.precision());
}

// Raise the target to `bits` without losing its current value.
void widen(mpfr_ptr x, mpfr_prec_t bits) {
  if (mpfr_get_prec(x) < bits) mpfr_prec_round(x, bits, kRnd);
}

template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
HPReal unary(const HPReal& x) {
  HPReal r(x.precision());
  Fn(r.raw(), x.get(), kRnd);
  return r;
}

}  // namespace

HPReal::HPReal(mpfr_prec_t bits) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

HPReal::HPReal(long value, mpfr_prec_t bits) : HPReal(bits) {
  mpfr_set_si(value_, value, kRnd);
}

HPReal::HPReal(double value, mpfr_prec_t bits) : HPReal(bits) {
  mpfr_set_d(value_, value, kRnd);
}

HPReal::HPReal(const mpz_class& value, mpfr_prec_t bits) : HPReal(bits) {
  mpfr_set_z(value_, value.get_mpz_t(), kRnd);
}

HPReal::HPReal(const mpq_class& value, mpfr_prec_t bits) : HPReal(bits) {
  mpfr_set_q(value_, value.get_mpq_t(), kRnd);
}

HPReal::HPReal(std::string_view text, mpfr_prec_t bits) : HPReal(bits) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
      throw std::invalid_argument("not a rational number: " + s);
    }
    q.canonicalize();
    mpfr_set_q(value_, q.get_mpq_t(), kRnd);
    return;
  }
  char* end = nullptr;
  if (mpfr_strtofr(value_, s.c_str(), &end, 10, kRnd) != 0 && end == s.c_str()) {
    throw std::invalid_argument("not a decimal number: " + s);
  }
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("not a decimal number: " + s);
  }
}

HPReal::HPReal(const HPReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRnd);
}

HPReal::HPReal(HPReal&& other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

HPReal& HPReal::operator=(const HPReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

HPReal::~HPReal() { mpfr_clear(value_); }

HPReal HPReal::rounded(mpfr_prec_t bits) const {
  HPReal r(bits);
  mpfr_set(r.value_, value_, kRnd);
  return r;
}

std::string HPReal::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  digits = std::max(digits, 1);
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  if (n >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  }
  return std::string(buf.data());
}

long HPReal::exponent() const {
  if (!mpfr_regular_p(value_)) return 0;
  return mpfr_get_exp(value_);
}

HPReal HPReal::operator-() const {
  HPReal r(precision());
  mpfr_neg(r.value_, value_, kRnd);
  return r;
}

HPReal& HPReal::operator+=(const HPReal& rhs) {
  widen(value_, rhs.precision());
  mpfr_add(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator-=(const HPReal& rhs) {
  widen(value_, rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator*=(const HPReal& rhs) {
  widen(value_, rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator/=(const HPReal& rhs) {
  widen(value_, rhs.precision());
  mpfr_div(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRnd);
  return *this;
}

HPReal& HPReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRnd);
  return *this;
}

HPReal& HPReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRnd);
  return *this;
}

HPReal& HPReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRnd);
  return *this;
}

HPReal operator+(HPReal lhs, const HPReal& rhs) { return lhs += rhs; }
HPReal operator-(HPReal lhs, const HPReal& rhs) { return lhs -= rhs; }
HPReal operator*(HPReal lhs, const HPReal& rhs) { return lhs *= rhs; }
HPReal operator/(HPReal lhs, const HPReal& rhs) { return lhs /= rhs; }

HPReal operator-(long lhs, const HPReal& rhs) {
  HPReal r(rhs.precision());
  mpfr_si_sub(r.value_, lhs, rhs.value_, kRnd);
  return r;
}

HPReal operator/(long lhs, const HPReal& rhs) {
  HPReal r(rhs.precision());
  mpfr_si_div(r.value_, lhs, rhs.value_, kRnd);
  return r;
}

bool operator==(const HPReal& a, const HPReal& b) {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const HPReal& a, const HPReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const HPReal& a, long b) {
  return !a.is_nan() && mpfr_cmp_si(a.value_, b) == 0;
}

std::partial_ordering operator<=>(const HPReal& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const HPReal& x) {
  // bits * log10(2), rounded down
  int digits = static_cast<int>(static_cast<double>(x.precision()) * 0.30102999566398120);
  return os << x.to_string(std::max(digits, 1));
}

HPReal abs(const HPReal& x) { return unary<mpfr_abs>(x); }
HPReal sqrt(const HPReal& x) { return unary<mpfr_sqrt>(x); }
HPReal exp(const HPReal& x) { return unary<mpfr_exp>(x); }
HPReal expm1(const HPReal& x) { return unary<mpfr_expm1>(x); }
HPReal log(const HPReal& x) { return unary<mpfr_log>(x); }
HPReal log1p(const HPReal& x) { return unary<mpfr_log1p>(x); }
HPReal log2(const HPReal& x) { return unary<mpfr_log2>(x); }
HPReal log10(const HPReal& x) { return unary<mpfr_log10>(x); }
HPReal sin(const HPReal& x) { return unary<mpfr_sin>(x); }
HPReal cos(const HPReal& x) { return unary<mpfr_cos>(x); }
HPReal tan(const HPReal& x) { return unary<mpfr_tan>(x); }
HPReal sinh(const HPReal& x) { return unary<mpfr_sinh>(x); }
HPReal cosh(const HPReal& x) { return unary<mpfr_cosh>(x); }
HPReal tanh(const HPReal& x) { return unary<mpfr_tanh>(x); }
HPReal asinh(const HPReal& x) { return unary<mpfr_asinh>(x); }

HPReal atan2(const HPReal& y, const HPReal& x) {
  HPReal r(wider(y, x));
  mpfr_atan2(r.raw(), y.get(), x.get(), kRnd);
  return r;
}

HPReal hypot(const HPReal& x, const HPReal& y) {
  HPReal r(wider(x, y));
  mpfr_hypot(r.raw(), x.get(), y.get(), kRnd);
  return r;
}

HPReal pow(const HPReal& base, const HPReal& exponent) {
  HPReal r(wider(base, exponent));
  mpfr_pow(r.raw(), base.get(), exponent.get(), kRnd);
  return r;
}

HPReal pow(const HPReal& base, long exponent) {
  HPReal r(base.precision());
  mpfr_pow_si(r.raw(), base.get(), exponent, kRnd);
  return r;
}

HPReal floor(const HPReal& x) {
  HPReal r(x.precision());
  mpfr_floor(r.raw(), x.get());
  return r;
}

HPReal ceil(const HPReal& x) {
  HPReal r(x.precision());
  mpfr_ceil(r.raw(), x.get());
  return r;
}

HPReal max(const HPReal& a, const HPReal& b) { return a < b ? b : a; }
HPReal min(const HPReal& a, const HPReal& b) { return b < a ? b : a; }

HPReal const_pi(mpfr_prec_t bits) {
  HPReal r(bits);
  mpfr_const_pi(r.raw(), kRnd);
  return r;
}

HPReal const_ln2(mpfr_prec_t bits) {
  HPReal r(bits);
  mpfr_const_log2(r.raw(), kRnd);
  return r;
}

HPReal const_e(mpfr_prec_t bits) {
  HPReal one(1L, bits);
  return exp(one);
}

}  // namespace stehfest
