#include "stehfest/precision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stehfest {

mpfr_prec_t PrecisionContext::bits_for_digits(int decimal_digits) {
  // log2(10) = 3.3219..., plus a few bits so the last decimal digit is exact.
  return static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.3219280948873623)) + 8;
}

PrecisionContext::PrecisionContext(int digits, int guard)
    : digits_(digits), guard_(guard), bits_(bits_for_digits(digits + guard)), eps_(bits_) {
  if (digits < kMinDigits) {
    throw std::invalid_argument("precision context needs at least " +
                                std::to_string(kMinDigits) + " digits, got " +
                                std::to_string(digits));
  }
  if (guard < kMinGuard) {
    throw std::invalid_argument("precision context needs at least " +
                                std::to_string(kMinGuard) + " guard digits, got " +
                                std::to_string(guard));
  }
  eps_ = pow10(-digits);
}

HPReal PrecisionContext::pow10(long power) const {
  HPReal r(bits_);
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(power < 0 ? -power : power), MPFR_RNDN);
  if (power < 0) r = 1L / r;
  return r;
}

int required_digits(int n) {
  if (n < 1) throw std::invalid_argument("required_digits: order must be >= 1");
  // ceil(2.2 n) in integer arithmetic
  return (22 * n + 9) / 10 + 10;
}

int auto_digits(int n) { return std::max(required_digits(n), PrecisionContext::kMinDigits); }

}  // namespace stehfest
