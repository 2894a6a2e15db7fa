#pragma once

// The polynomials q_n(v), the series G(z) and H(z), and numerical checks of
// their generating-function identity and asymptotics.
//
//   q_n(v) = sum_{k=1}^{n} k^(n+1) (1/2)_k / ((n-k)! (k!)^2) (-1)^(n+k) v^k
//   G(z)   = sum_{n>=1} (1/2)_n/(n!)^2 (-1)^n n^(n+1) z^n,   |z| < 1/e
//   H(z)   = sum_{n>=1} n^(n+1)/n! (-1)^n z^n = -W/(1+W)^3
//   G(v t e^t) = sum_{n>=1} q_n(v) (-1)^n t^n
//   f_n(x) = int_0^inf q_n(4 e^-u (1 - e^-u)) f(x u / ln2) du

#include <functional>
#include <stdexcept>
#include <vector>

#include "stehfest/inverter.hpp"
#include "stehfest/precision.hpp"
#include "stehfest/rational.hpp"

namespace stehfest {

inline constexpr int kMaxQnOrder = 200;
inline constexpr int kMaxGenfunOrder = 30;

struct PolyQ {
  int n = 0;
  std::vector<BigRational> coeffs;  // coeffs[k-1] multiplies v^k, k = 1..n
};

/// Memoized; throws std::out_of_range unless 1 <= n <= 200.
const PolyQ& qn_coeffs(int n);

/// Horner evaluation with enough extra digits to absorb the alternating
/// coefficients; the result is rounded to ctx.
HPReal qn_eval(int n, const HPReal& v, const PrecisionContext& ctx);
BigRational qn_eval_exact(int n, const BigRational& v);

/// Coefficients of one q_n converted once, for repeated evaluation.
class QnEvaluator {
 public:
  QnEvaluator(int n, const PrecisionContext& ctx);
  HPReal operator()(const HPReal& v) const;
  int n() const { return n_; }
  /// Decimal digits added on top of ctx for the Horner pass.
  int extra_digits() const { return extra_digits_; }

 private:
  int n_;
  int extra_digits_;
  PrecisionContext ctx_;
  PrecisionContext work_;
  std::vector<HPReal> coeffs_;
};

struct SeriesG {
  int N = 0;
  std::vector<BigRational> g;  // g[n-1] = g_n
};
struct SeriesH {
  int N = 0;
  std::vector<BigRational> h;  // h[n-1] = h_n
};
SeriesG series_g(int N);
SeriesH series_h(int N);

/// G(z) for real z > -1/e: the series for |e z| <= 0.99, the integral
/// (2/pi) int_0^{pi/2} H(z sin^2 t) dt otherwise.
HPReal g_eval(const HPReal& z, const PrecisionContext& ctx);
/// G through its series only; std::domain_error when |e z| > 0.99.
HPReal g_series_eval(const HPReal& z, const PrecisionContext& ctx);
/// G through the integral over H only.
HPReal g_integral_eval(const HPReal& z, const PrecisionContext& ctx);
/// H(z) = -W/(1+W)^3 for real z > -1/e.
HPReal h_eval(const HPReal& z, const PrecisionContext& ctx);

/// Coefficient of t^n in G(v t e^t) equals (-1)^n q_n(v) for n = 1..n_max,
/// compared exactly. `q_source` supplies the polynomials under test.
bool genfun_identity_check(int n_max, const BigRational& v);
bool genfun_identity_check(int n_max, const BigRational& v, const std::function<PolyQ(int)>& q_source);

/// G(z) - [1/(1+ez) + (5/24) ln(1+ez)]/(sqrt(2) pi), -1/e < z <= -1/e + 0.02.
HPReal g_singular_remainder(const HPReal& z, const PrecisionContext& ctx);

/// Laurent coefficients of H in p = sqrt(2(1+ez)): element i is c_{i-3},
/// i = 0 .. N+3, derived from the branch series of W.
std::vector<BigRational> h_branch_coefficients(int N);

struct HzBranchCheck {
  HPReal difference;  // |H_series(z) - sum_{n=-3}^{N} c_n p^n|
  HPReal bound;       // series tail plus branch truncation
  long series_terms = 0;
  bool passed() const { return difference <= bound; }
};

/// Requires -1/e < z with |p(z)| <= 0.5 (std::domain_error otherwise, which
/// includes z < -1/e where p is imaginary). c_{-3}, c_{-1}, c_0, c_1 are the
/// closed-form values, higher ones come from h_branch_coefficients.
HzBranchCheck hz_branch_check(const HPReal& z, int N, const PrecisionContext& ctx);

enum class AsymptoticMode { plain, extended };

/// (-1)^n (sqrt2/pi) Re[w^-n/(1+w)] with w = w(v), 1/2 <= v < 1; the extended
/// mode adds -5/(24n) w^-n + 25/(1152 n^2) (1+w) w^-n inside Re[.].
HPReal qn_asymptotic(int n, const HPReal& v, const PrecisionContext& ctx, AsymptoticMode mode = AsymptoticMode::plain);

/// (sqrt2/pi)(n + 1/3 - 5/(24 n)).
HPReal qn_at_one_asymptotic(int n, const PrecisionContext& ctx);

struct JumpFormCheck {
  HPReal q_value;            // q_n(1 - 4 v^2)
  HPReal jump_form;          // (sqrt2/pi) |xi|^-n sin(n alpha)/alpha
  HPReal difference;         // |q_value - jump_form|
  HPReal envelope;           // |xi(v)|^-n
  HPReal scaled_difference;  // difference / envelope
  HPReal relative_error;     // difference / |q_value|
};

/// 0 < v <= 1/4.
JumpFormCheck qn_jump_form_check(int n, const HPReal& v, const PrecisionContext& ctx);

class DecayFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecayFit {
  HPReal C;
  HPReal b;
  HPReal rms_log_residual;     // root-mean-square of log M_n - log(C b^-n)
  std::vector<int> n_values;
  std::vector<HPReal> maxima;  // M_n = max_v |q_n(v)|/v over the grid
  int grid_points = 0;
};

/// Fits M_n = max_{v in grid} |q_n(v)|/v against C b^-n over n_first..n_last,
/// grid v_j = (1-eps) j/grid_intervals, j = 0..grid_intervals; v = 0 uses the
/// linear coefficient. Throws DecayFitError for a degenerate fit.
DecayFit decay_bound_probe(const HPReal& epsilon, int n_first, int n_last, const PrecisionContext& ctx,
                           int grid_intervals = 200);

struct IntegralRepCheck {
  HPReal integral;  // int_0^inf q_n(4e^-u(1-e^-u)) f(x u/ln2) du
  HPReal stehfest;  // stehfest_approx(F, x, n)
  HPReal difference;
};

IntegralRepCheck integral_representation_check(const OriginalFn& f, const TransformFn& F, const HPReal& x, int n,
                                               const PrecisionContext& ctx);

}  // namespace stehfest
