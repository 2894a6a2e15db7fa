#pragma once

// Exact Gaver-Stehfest coefficients.
//
//   c_k(n) = (-1)^(n+k) k^n / (k! (n-k)!),                          1 <= k <= n
//   a_k(n) = (-1)^(n+k)/n! sum_{j=floor((k+1)/2)}^{min(k,n)}
//                j^(n+1) C(n,j) C(2j,j) C(j,k-j),                     1 <= k <= 2n
//
// All values are exact rationals; conversion to HPReal happens at
// evaluation time only.

#include <vector>

#include "stehfest/precision.hpp"
#include "stehfest/rational.hpp"

namespace stehfest {

inline constexpr int kDefaultMaxOrder = 64;

/// Stehfest acceleration weights c_1(n) .. c_n(n).
struct StehfestWeights {
  int n = 0;
  std::vector<BigRational> c;
};

/// Collapsed coefficients a_1(n) .. a_2n(n) applied to F(k ln2 / x).
struct GaverStehfestCoeffs {
  int n = 0;
  std::vector<BigRational> a;
};

/// Throws std::out_of_range unless 1 <= n <= max_order.
StehfestWeights stehfest_weights(int n, int max_order = kDefaultMaxOrder);

/// True iff sum_k c_k k^-j equals 1 for j = 0 and 0 for j = 1 .. n-1, exactly.
bool vandermonde_check(const StehfestWeights& w);

/// Direct evaluation of the a_k(n) double sum. Memoized per n.
const GaverStehfestCoeffs& gaver_stehfest_coeffs(int n, int max_order = kDefaultMaxOrder);

/// a_k(n) rebuilt as sum_k c_k(n) * (k-th Gaver functional weights),
/// the second, independent route to the same table.
GaverStehfestCoeffs gaver_stehfest_coeffs_via_gaver(int n, int max_order = kDefaultMaxOrder);

/// sum_k a_k(n) / k (equals 1 for every n).
BigRational constant_sum(const GaverStehfestCoeffs& coeffs);

/// Exact weights (2k)!/(k!(k-1)!) * C(k,i) (-1)^i, i = 0..k, of the k-th
/// Gaver functional applied to F((k+i) ln2 / x).
std::vector<BigRational> gaver_row(int k);

/// Gaver kernel p_k(u) = (2k)!/(k!(k-1)!) (1-e^-u)^k e^-ku.
HPReal gaver_kernel(int k, const HPReal& u, const PrecisionContext& ctx);

}  // namespace stehfest
