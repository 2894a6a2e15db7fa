#include "stehfest/coeffs.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace stehfest {

namespace {

void check_order(int n, int max_order) {
  if (n < 1 || n > max_order) {
    throw std::out_of_range("Gaver-Stehfest order " + std::to_string(n) + " outside [1, " +
                            std::to_string(max_order) + "]");
  }
}

BigRational sign_of(int exponent) { return (exponent % 2 == 0) ? BigRational(1) : BigRational(-1); }

GaverStehfestCoeffs compute_coeffs(int n) {
  GaverStehfestCoeffs out;
  out.n = n;
  out.a.reserve(2 * static_cast<size_t>(n));
  const BigInteger n_fact = factorial(n);
  for (int k = 1; k <= 2 * n; ++k) {
    BigInteger acc = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, n); ++j) {
      acc += ipow(j, n + 1) * binomial(n, j) * binomial(2 * j, j) * binomial(j, k - j);
    }
    BigRational a(acc, n_fact);
    a.canonicalize();
    out.a.push_back(sign_of(n + k) * a);
  }
  return out;
}

}  // namespace

StehfestWeights stehfest_weights(int n, int max_order) {
  check_order(n, max_order);
  StehfestWeights w;
  w.n = n;
  w.c.reserve(n);
  for (int k = 1; k <= n; ++k) {
    BigRational c(ipow(k, n), factorial(k) * factorial(n - k));
    c.canonicalize();
    w.c.push_back(sign_of(n + k) * c);
  }
  return w;
}

bool vandermonde_check(const StehfestWeights& w) {
  const int n = static_cast<int>(w.c.size());
  for (int j = 0; j < std::max(n, 1); ++j) {
    BigRational sum = 0;
    for (int k = 1; k <= n; ++k) {
      BigRational term = w.c[k - 1];
      term /= BigRational(ipow(k, j));
      sum += term;
    }
    if (sum != (j == 0 ? 1 : 0)) return false;
  }
  return true;
}

const GaverStehfestCoeffs& gaver_stehfest_coeffs(int n, int max_order) {
  check_order(n, max_order);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaverStehfestCoeffs>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  auto computed = std::make_unique<const GaverStehfestCoeffs>(compute_coeffs(n));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(computed));
  return *it->second;
}

std::vector<BigRational> gaver_row(int k) {
  if (k < 1) throw std::out_of_range("Gaver functional index must be >= 1");
  BigRational lead(factorial(2 * k), factorial(k) * factorial(k - 1));
  lead.canonicalize();
  std::vector<BigRational> row;
  row.reserve(k + 1);
  for (int i = 0; i <= k; ++i) row.push_back(sign_of(i) * lead * BigRational(binomial(k, i)));
  return row;
}

GaverStehfestCoeffs gaver_stehfest_coeffs_via_gaver(int n, int max_order) {
  StehfestWeights w = stehfest_weights(n, max_order);
  GaverStehfestCoeffs out;
  out.n = n;
  out.a.assign(2 * static_cast<size_t>(n), BigRational(0));
  for (int k = 1; k <= n; ++k) {
    std::vector<BigRational> row = gaver_row(k);
    for (int i = 0; i <= k; ++i) out.a[k + i - 1] += w.c[k - 1] * row[i];
  }
  return out;
}

BigRational constant_sum(const GaverStehfestCoeffs& coeffs) {
  BigRational sum = 0;
  for (size_t k = 1; k <= coeffs.a.size(); ++k) sum += coeffs.a[k - 1] / BigRational(static_cast<long>(k));
  return sum;
}

HPReal gaver_kernel(int k, const HPReal& u, const PrecisionContext& ctx) {
  if (k < 1) throw std::out_of_range("Gaver kernel index must be >= 1");
  if (u < 0L) throw std::domain_error("Gaver kernel is defined for u >= 0");
  BigRational lead(factorial(2 * k), factorial(k) * factorial(k - 1));
  HPReal t = exp(-u.rounded(ctx.bits()));
  return ctx.real(lead) * pow(-expm1(-u.rounded(ctx.bits())), k) * pow(t, k);
}

}  // namespace stehfest
