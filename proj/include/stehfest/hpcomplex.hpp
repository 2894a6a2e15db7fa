#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "stehfest/hpreal.hpp"

namespace stehfest {

/// Complex scalar over HPReal. Principal branches everywhere: arg in (-pi, pi],
/// with a signed-zero imaginary part deciding the side of the negative axis.
struct HPComplex {
  HPReal re;
  HPReal im;

  explicit HPComplex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
  HPComplex(HPReal real, HPReal imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit HPComplex(const HPReal& real) : re(real), im(real.precision()) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  std::string to_string(int digits) const;

  HPComplex operator-() const { return {-re, -im}; }
  HPComplex& operator+=(const HPComplex& rhs);
  HPComplex& operator-=(const HPComplex& rhs);
  HPComplex& operator*=(const HPComplex& rhs);
  HPComplex& operator/=(const HPComplex& rhs);
  HPComplex& operator*=(const HPReal& rhs);
  HPComplex& operator/=(const HPReal& rhs);

  friend HPComplex operator+(HPComplex a, const HPComplex& b) { return a += b; }
  friend HPComplex operator-(HPComplex a, const HPComplex& b) { return a -= b; }
  friend HPComplex operator*(HPComplex a, const HPComplex& b) { return a *= b; }
  friend HPComplex operator/(HPComplex a, const HPComplex& b) { return a /= b; }
  friend HPComplex operator*(HPComplex a, const HPReal& b) { return a *= b; }
  friend HPComplex operator*(const HPReal& b, HPComplex a) { return a *= b; }
  friend HPComplex operator/(HPComplex a, const HPReal& b) { return a /= b; }
  friend HPComplex operator+(HPComplex a, const HPReal& b) {
    a.re += b;
    return a;
  }
  friend HPComplex operator-(HPComplex a, const HPReal& b) {
    a.re -= b;
    return a;
  }
  friend HPComplex operator+(HPComplex a, long b) {
    a.re += b;
    return a;
  }
  friend HPComplex operator-(HPComplex a, long b) {
    a.re -= b;
    return a;
  }
};

std::ostream& operator<<(std::ostream& os, const HPComplex& z);

HPComplex from_std(std::complex<double> z, mpfr_prec_t bits);
HPReal abs(const HPComplex& z);
HPReal norm(const HPComplex& z);
HPReal arg(const HPComplex& z);
HPComplex conj(const HPComplex& z);
HPComplex exp(const HPComplex& z);
HPComplex log(const HPComplex& z);
HPComplex sqrt(const HPComplex& z);
/// Integer power by repeated squaring; negative powers invert first.
HPComplex pow(const HPComplex& z, long n);

}  // namespace stehfest
