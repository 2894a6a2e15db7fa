#pragma once

#include <string_view>

#include <gmpxx.h>

#include "stehfest/hpreal.hpp"

namespace stehfest {

/// Working precision threaded through every floating operation.
///
/// `digits` is the number of decimal digits the caller wants to trust,
/// `guard` the number of extra decimal digits carried internally. Values
/// are created at digits + guard decimal digits; `eps()` is 10^-digits.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 15;
  static constexpr int kMinGuard = 5;
  static constexpr int kDefaultGuard = 10;

  explicit PrecisionContext(int digits = 30, int guard = kDefaultGuard);

  int digits() const { return digits_; }
  int guard() const { return guard_; }
  mpfr_prec_t bits() const { return bits_; }
  const HPReal& eps() const { return eps_; }

  /// Copy with a different number of working digits (guard retained).
  PrecisionContext with_digits(int digits) const { return PrecisionContext(digits, guard_); }
  /// Copy with `extra` more working digits.
  PrecisionContext widened(int extra) const { return with_digits(digits_ + extra); }

  HPReal zero() const { return HPReal(bits_); }
  HPReal real(long value) const { return HPReal(value, bits_); }
  HPReal real(int value) const { return HPReal(static_cast<long>(value), bits_); }
  HPReal real(double value) const { return HPReal(value, bits_); }
  HPReal real(const mpq_class& value) const { return HPReal(value, bits_); }
  HPReal real(const mpz_class& value) const { return HPReal(value, bits_); }
  HPReal real(std::string_view text) const { return HPReal(text, bits_); }
  /// 10^power at working precision.
  HPReal pow10(long power) const;

  HPReal pi() const { return const_pi(bits_); }
  HPReal ln2() const { return const_ln2(bits_); }
  HPReal e() const { return const_e(bits_); }

  /// Binary precision needed for `decimal_digits` decimal digits.
  static mpfr_prec_t bits_for_digits(int decimal_digits);

 private:
  int digits_;
  int guard_;
  mpfr_prec_t bits_;
  HPReal eps_;
};

/// Minimum working precision (decimal digits) for an order-n Gaver-Stehfest
/// evaluation: ceil(2.2 n) + 10.
int required_digits(int n);

/// Working digits for order n under the "auto" policy: the required digits,
/// raised to the context floor.
int auto_digits(int n);

}  // namespace stehfest
