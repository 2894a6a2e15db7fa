#include "stehfest/hpcomplex.hpp"

#include <ostream>

namespace stehfest {

std::string HPComplex::to_string(int digits) const {
  return re.to_string(digits) + (im.signbit() ? " - " : " + ") + abs(im).to_string(digits) + "i";
}

HPComplex& HPComplex::operator+=(const HPComplex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

HPComplex& HPComplex::operator-=(const HPComplex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

HPComplex& HPComplex::operator*=(const HPComplex& rhs) {
  HPReal r = re * rhs.re - im * rhs.im;
  HPReal i = re * rhs.im + im * rhs.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

HPComplex& HPComplex::operator/=(const HPComplex& rhs) {
  // Smith's formulation keeps the intermediate quotient bounded.
  if (abs(rhs.re) >= abs(rhs.im)) {
    HPReal ratio = rhs.im / rhs.re;
    HPReal denom = rhs.re + rhs.im * ratio;
    HPReal r = (re + im * ratio) / denom;
    HPReal i = (im - re * ratio) / denom;
    re = std::move(r);
    im = std::move(i);
  } else {
    HPReal ratio = rhs.re / rhs.im;
    HPReal denom = rhs.re * ratio + rhs.im;
    HPReal r = (re * ratio + im) / denom;
    HPReal i = (im * ratio - re) / denom;
    re = std::move(r);
    im = std::move(i);
  }
  return *this;
}

HPComplex& HPComplex::operator*=(const HPReal& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

HPComplex& HPComplex::operator/=(const HPReal& rhs) {
  re /= rhs;
  im /= rhs;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const HPComplex& z) {
  return os << "(" << z.re << ", " << z.im << ")";
}

HPComplex from_std(std::complex<double> z, mpfr_prec_t bits) {
  return {HPReal(z.real(), bits), HPReal(z.imag(), bits)};
}

HPReal abs(const HPComplex& z) { return hypot(z.re, z.im); }

HPReal norm(const HPComplex& z) { return z.re * z.re + z.im * z.im; }

HPReal arg(const HPComplex& z) { return atan2(z.im, z.re); }

HPComplex conj(const HPComplex& z) { return {z.re, -z.im}; }

HPComplex exp(const HPComplex& z) {
  HPReal m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

HPComplex log(const HPComplex& z) { return {log(abs(z)), arg(z)}; }

HPComplex sqrt(const HPComplex& z) {
  if (z.is_zero()) return HPComplex(z.precision());
  HPReal m = abs(z);
  if (z.re.sign() >= 0) {
    HPReal t = sqrt((m + z.re) / 2L);
    return {t, z.im / (t * 2L)};
  }
  // Left half-plane: compute the imaginary part first to avoid cancellation.
  HPReal t = sqrt((m - z.re) / 2L);
  if (z.im.signbit()) t = -t;
  return {z.im / (t * 2L), t};
}

HPComplex pow(const HPComplex& z, long n) {
  HPComplex base = z;
  if (n < 0) {
    HPComplex one(HPReal(1L, z.precision()), HPReal(z.precision()));
    base = one / z;
    n = -n;
  }
  HPComplex result(HPReal(1L, z.precision()), HPReal(z.precision()));
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

}  // namespace stehfest
