#pragma once

// Exact rational helpers over GMP.

#include <string>
#include <vector>

#include <gmpxx.h>

namespace stehfest {

using BigRational = mpq_class;
using BigInteger = mpz_class;

BigInteger factorial(unsigned long n);
BigInteger binomial(unsigned long n, unsigned long k);
/// Rising factorial (1/2)_k = (1/2)(3/2)...(k - 1/2).
BigRational half_pochhammer(unsigned long k);
/// base^exponent for exponent >= 0.
BigInteger ipow(long base, unsigned long exponent);

/// "p/q", or "p" when q = 1.
std::string to_exact_string(const BigRational& q);
BigRational parse_rational(const std::string& text);

/// log10 |q|, used to size working precision.
double log10_abs(const BigRational& q);

}  // namespace stehfest
