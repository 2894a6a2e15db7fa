#pragma once

// Principal branch W_0 of the Lambert W function, w e^w = z.
//
// For real z < -1/e (on the cut) the upper boundary value, 0 < Im w < pi,
// is returned; the lower one is its conjugate.

#include <memory>
#include <vector>

#include "stehfest/hpcomplex.hpp"
#include "stehfest/precision.hpp"
#include "stehfest/rational.hpp"

namespace stehfest {

/// Coefficients mu_0 .. mu_N of W(z) = sum mu_n p^n, p = sqrt(2(1 + e z)).
struct BranchSeries {
  std::vector<BigRational> mu;
  int order() const { return static_cast<int>(mu.size()) - 1; }
};

/// Shared snapshot holding at least mu_0 .. mu_order. Thread-safe and memoized.
std::shared_ptr<const BranchSeries> branch_series(int order);

/// Exact resubstitution test: with s = 1 + sum_{n>=1} mu_n p^n, the series
/// (s - 1) e^s + 1 - p^2/2 vanishes through p^order.
bool branch_series_resubstitution_check(const BranchSeries& series, int order);

/// sum_{n<=N} mu_n p^n. Throws std::domain_error for |p| >= 0.9 sqrt(2) and
/// std::out_of_range when the series holds fewer than N+1 coefficients.
HPComplex branch_series_eval(const HPComplex& p, int N, const BranchSeries& series);

enum class WMethod { automatic, taylor, branch_series, halley };

/// W_0(z). `method` forces a regime (diagnostics only); the automatic choice is
/// Taylor for |z| < 0.2/e, branch series for |1 + e z| < 0.05, Halley otherwise.
HPComplex lambert_w0(const HPComplex& z, const PrecisionContext& ctx, WMethod method = WMethod::automatic);
HPComplex lambert_w0(const HPReal& z, const PrecisionContext& ctx);

/// W_0((q - 1)/e) given q = 1 + e z directly, so that values near the branch
/// point keep full relative accuracy in q.
HPComplex lambert_w0_from_q(const HPComplex& q, const PrecisionContext& ctx, WMethod method = WMethod::automatic);

/// |w e^w - z| evaluated at extra precision.
HPReal lambert_residual(const HPComplex& w, const HPComplex& z, const PrecisionContext& ctx);

/// Membership in {x + iy : -pi < y < pi, x > -y cot y}, the image of the cut plane.
bool in_region_a(const HPComplex& w);

/// w(v) = W(-1/(e v)) for 0 < v <= 1.
HPComplex w_of_v(const HPReal& v, const PrecisionContext& ctx);

struct XiAlpha {
  HPReal v;
  HPComplex xi;
  HPReal alpha;
};

/// xi(v) = W(-1/(e (1 - 4 v^2))), alpha(v) = Im xi(v), 0 <= v < 1/2.
XiAlpha xi_alpha(const HPReal& v, const PrecisionContext& ctx);

}  // namespace stehfest
