#include "stehfest/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace stehfest {

BigInteger factorial(unsigned long n) {
  BigInteger r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInteger binomial(unsigned long n, unsigned long k) {
  BigInteger r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigRational half_pochhammer(unsigned long k) {
  // (1/2)_k = (2k)! / (4^k k!)
  BigInteger den;
  mpz_ui_pow_ui(den.get_mpz_t(), 4, k);
  den *= factorial(k);
  BigRational r(factorial(2 * k), den);
  r.canonicalize();
  return r;
}

BigInteger ipow(long base, unsigned long exponent) {
  BigInteger r;
  BigInteger b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exponent);
  return r;
}

std::string to_exact_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRational parse_rational(const std::string& text) {
  BigRational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not an exact rational: " + text);
  }
  q.canonicalize();
  return q;
}

double log10_abs(const BigRational& q) {
  if (q == 0) return -INFINITY;
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  return std::log10(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::log10(2.0);
}

}  // namespace stehfest
