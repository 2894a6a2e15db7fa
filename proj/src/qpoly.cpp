#include "stehfest/qpoly.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "stehfest/lambertw.hpp"
#include "stehfest/quadrature.hpp"

namespace stehfest {

namespace {

PolyQ compute_qn(int n) {
  PolyQ q;
  q.n = n;
  q.coeffs.reserve(n);
  for (int k = 1; k <= n; ++k) {
    BigInteger kf = factorial(k);
    BigRational c = half_pochhammer(k) * BigRational(ipow(k, n + 1)) / BigRational(factorial(n - k) * kf * kf);
    c.canonicalize();
    if ((n + k) % 2 != 0) c = -c;
    q.coeffs.push_back(c);
  }
  return q;
}

// Partial sum of a positive-ratio series with a tail bound from the current
// term ratio, valid once the ratios decrease toward their limit.
struct SeriesSum {
  HPReal sum;
  HPReal tail;
  long terms = 0;
};

template <typename Ratio>
SeriesSum sum_series(HPReal first, Ratio ratio, const HPReal& tol, long max_terms) {
  const mpfr_prec_t bits = first.precision();
  SeriesSum out{first, HPReal(bits), 1};
  HPReal term = first;
  for (long n = 1; n < max_terms; ++n) {
    HPReal r = ratio(n);  // t_{n+1} / t_n
    term *= r;
    out.sum += term;
    out.terms = n + 1;
    HPReal ar = abs(r);
    if (n >= 2 && ar < 1L) {
      out.tail = abs(term) * ar / (1L - ar);
      if (out.tail <= tol * max(abs(out.sum), HPReal(1L, bits))) return out;
    }
  }
  throw std::runtime_error("series did not reach the requested precision in " + std::to_string(max_terms) + " terms");
}

// (1 + 1/n)^(n+1)
HPReal binomial_growth(long n, mpfr_prec_t bits) {
  HPReal inv = HPReal(1L, bits) / n;
  return exp(log1p(inv) * (n + 1));
}

SeriesSum h_series(const HPReal& z, const PrecisionContext& work, const HPReal& tol) {
  return sum_series(
      -z, [&](long n) { return -binomial_growth(n, work.bits()) * z; }, tol, 50000000L);
}

HPReal h_from_q(const HPReal& q, const PrecisionContext& work) {
  // H = -W/(1+W)^3 = (1-s)/s^3, s = 1 + W
  HPComplex w = lambert_w0_from_q(HPComplex(q, HPReal(q.precision())), work);
  HPReal s = w.re + 1L;
  return (1L - s) / (s * s * s);
}

}  // namespace

const PolyQ& qn_coeffs(int n) {
  if (n < 1 || n > kMaxQnOrder) {
    throw std::out_of_range("q_n order " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQnOrder) + "]");
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const PolyQ>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  auto computed = std::make_unique<const PolyQ>(compute_qn(n));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(computed));
  return *it->second;
}

QnEvaluator::QnEvaluator(int n, const PrecisionContext& ctx) : n_(n), extra_digits_(0), ctx_(ctx), work_(ctx) {
  const PolyQ& q = qn_coeffs(n);
  double largest = 0.0;
  for (const BigRational& c : q.coeffs) largest = std::max(largest, log10_abs(c));
  extra_digits_ = static_cast<int>(std::ceil(largest)) + 2;
  work_ = ctx.widened(extra_digits_);
  coeffs_.reserve(q.coeffs.size());
  for (const BigRational& c : q.coeffs) coeffs_.push_back(work_.real(c));
}

HPReal QnEvaluator::operator()(const HPReal& v_in) const {
  HPReal v = v_in.rounded(work_.bits());
  HPReal acc = coeffs_.back();
  for (int k = n_ - 1; k >= 1; --k) acc = acc * v + coeffs_[k - 1];
  return (acc * v).rounded(ctx_.bits());
}

HPReal qn_eval(int n, const HPReal& v, const PrecisionContext& ctx) { return QnEvaluator(n, ctx)(v); }

BigRational qn_eval_exact(int n, const BigRational& v) {
  const PolyQ& q = qn_coeffs(n);
  BigRational acc = q.coeffs.back();
  for (int k = n - 1; k >= 1; --k) acc = acc * v + q.coeffs[k - 1];
  BigRational out = acc * v;
  out.canonicalize();
  return out;
}

SeriesG series_g(int N) {
  SeriesG s;
  s.N = N;
  for (int n = 1; n <= N; ++n) {
    BigInteger nf = factorial(n);
    BigRational g = half_pochhammer(n) * BigRational(ipow(n, n + 1)) / BigRational(nf * nf);
    g.canonicalize();
    if (n % 2 != 0) g = -g;
    s.g.push_back(g);
  }
  return s;
}

SeriesH series_h(int N) {
  SeriesH s;
  s.N = N;
  for (int n = 1; n <= N; ++n) {
    BigRational h(ipow(n, n + 1), factorial(n));
    h.canonicalize();
    if (n % 2 != 0) h = -h;
    s.h.push_back(h);
  }
  return s;
}

HPReal g_series_eval(const HPReal& z, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPReal zw = z.rounded(work.bits());
  if (abs(zw) * work.e() > work.real("0.99")) throw std::domain_error("G series used only for |e z| <= 0.99");
  if (zw.is_zero()) return ctx.zero();
  const HPReal tol = work.pow10(-(work.digits() + work.guard()));
  // t_{n+1}/t_n = -(n + 1/2)(1 + 1/n)^(n+1) z / (n + 1)
  SeriesSum s = sum_series(
      -zw / 2L,
      [&](long n) {
        return -binomial_growth(n, work.bits()) * zw * (work.real(2 * n + 1) / (2 * (n + 1)));
      },
      tol, 10000000L);
  return s.sum.rounded(ctx.bits());
}

HPReal h_eval(const HPReal& z, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPReal q = z.rounded(work.bits()) * work.e() + 1L;
  if (!(q > 0L)) throw std::domain_error("H evaluated at z <= -1/e");
  return h_from_q(q, work).rounded(ctx.bits());
}

HPReal g_integral_eval(const HPReal& z, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPReal zw = z.rounded(work.bits());
  HPReal qz = zw * work.e() + 1L;  // 1 + e z
  if (!(qz > 0L)) throw std::domain_error("G evaluated at z <= -1/e");
  if (zw.is_zero()) return ctx.zero();
  // 1 + e z sin^2 t = cos^2 t + (1 + e z) sin^2 t keeps the near-branch argument exact.
  RealFunction integrand = [&](const HPReal& t) {
    HPReal s = sin(t), c = cos(t);
    HPReal y = zw * s * s;
    if (abs(y) * work.e() < work.real("0.2")) {
      HPComplex w = lambert_w0(HPComplex(y, work.zero()), work);
      HPReal s1 = w.re + 1L;
      return -w.re / (s1 * s1 * s1);
    }
    return h_from_q(c * c + qz * s * s, work);
  };
  // split toward pi/2, where the integrand peaks on the scale sqrt(1 + e z)
  HPReal half_pi = work.pi() / 2L;
  std::vector<HPReal> cuts{work.zero()};
  std::vector<HPReal> near;
  HPReal width = sqrt(abs(qz));
  while (width < work.real("0.5")) {
    near.push_back(half_pi - width);
    width *= 4L;
  }
  for (auto it = near.rbegin(); it != near.rend(); ++it) cuts.push_back(*it);
  cuts.push_back(half_pi);
  HPReal total = work.zero();
  for (size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(integrand, cuts[i], cuts[i + 1], work);
  return (total * 2L / work.pi()).rounded(ctx.bits());
}

HPReal g_eval(const HPReal& z, const PrecisionContext& ctx) {
  HPReal ez = abs(z) * ctx.e();
  if (ez <= ctx.real("0.99")) return g_series_eval(z, ctx);
  return g_integral_eval(z, ctx);
}

bool genfun_identity_check(int n_max, const BigRational& v) {
  return genfun_identity_check(n_max, v, [](int n) { return qn_coeffs(n); });
}

bool genfun_identity_check(int n_max, const BigRational& v, const std::function<PolyQ(int)>& q_source) {
  if (n_max < 1 || n_max > kMaxGenfunOrder) throw std::out_of_range("generating-function check supports n_max <= 30");
  if (v < 0 || v > 1) throw std::domain_error("generating-function check needs 0 <= v <= 1");
  // y(t) = v t e^t = sum_{m>=1} v t^m/(m-1)!
  std::vector<BigRational> y(n_max + 1, BigRational(0));
  for (int m = 1; m <= n_max; ++m) y[m] = v / BigRational(factorial(m - 1));
  SeriesG g = series_g(n_max);
  std::vector<BigRational> composed(n_max + 1, BigRational(0));
  std::vector<BigRational> power = y;  // y^j truncated at t^n_max
  for (int j = 1; j <= n_max; ++j) {
    for (int m = j; m <= n_max; ++m) composed[m] += g.g[j - 1] * power[m];
    if (j == n_max) break;
    std::vector<BigRational> next(n_max + 1, BigRational(0));
    for (int a = j; a <= n_max; ++a) {
      if (power[a] == 0) continue;
      for (int b = 1; a + b <= n_max; ++b) next[a + b] += power[a] * y[b];
    }
    power = std::move(next);
  }
  for (int n = 1; n <= n_max; ++n) {
    PolyQ q = q_source(n);
    BigRational value = 0;
    BigRational vk = 1;
    for (const BigRational& c : q.coeffs) {
      vk *= v;
      value += c * vk;
    }
    if (n % 2 != 0) value = -value;
    if (composed[n] != value) return false;
  }
  return true;
}

HPReal g_singular_remainder(const HPReal& z, const PrecisionContext& ctx) {
  PrecisionContext probe = ctx.widened(10);
  HPReal q = z.rounded(probe.bits()) * probe.e() + 1L;
  if (!(q > 0L)) throw std::domain_error("singular remainder needs z > -1/e");
  if (q > probe.e() * probe.real("0.02") * (1L + probe.pow10(-ctx.digits()))) {
    throw std::domain_error("singular remainder defined for z <= -1/e + 0.02");
  }
  // G ~ 1/(sqrt2 pi q): carry the digits the subtraction cancels
  int extra = static_cast<int>(std::ceil(-log10(q).to_double())) + 2;
  PrecisionContext work = ctx.widened(extra);
  HPReal g = g_eval(z.rounded(work.bits()), work);
  HPReal qw = q.rounded(work.bits());
  HPReal singular = (1L / qw + log(qw) * 5L / 24L) / (sqrt(work.real(2L)) * work.pi());
  return (g - singular).rounded(ctx.bits());
}

std::vector<BigRational> h_branch_coefficients(int N) {
  if (N < -3) throw std::out_of_range("branch coefficients start at c_-3");
  const int M = N + 3;  // highest index into the result
  auto series = branch_series(M + 2);
  // s = p (1 + u), u_k = mu_{k+1}; H = p^-3 (1+u)^-3 - p^-2 (1+u)^-2
  std::vector<BigRational> u(M + 1, BigRational(0));
  for (int k = 1; k <= M; ++k) u[k] = series->mu[k + 1];
  std::vector<BigRational> inv(M + 1, BigRational(0));
  inv[0] = 1;
  for (int m = 1; m <= M; ++m) {
    BigRational acc = 0;
    for (int j = 1; j <= m; ++j) acc += u[j] * inv[m - j];
    inv[m] = -acc;
  }
  auto mul = [M](const std::vector<BigRational>& a, const std::vector<BigRational>& b) {
    std::vector<BigRational> out(M + 1, BigRational(0));
    for (int i = 0; i <= M; ++i)
      for (int j = 0; i + j <= M; ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  std::vector<BigRational> inv2 = mul(inv, inv);
  std::vector<BigRational> inv3 = mul(inv2, inv);
  std::vector<BigRational> c(M + 1, BigRational(0));
  for (int m = 0; m <= M; ++m) {
    c[m] = inv3[m] - (m >= 1 ? inv2[m - 1] : BigRational(0));
    c[m].canonicalize();
  }
  return c;
}

HzBranchCheck hz_branch_check(const HPReal& z, int N, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPReal zw = z.rounded(work.bits());
  HPReal q = zw * work.e() + 1L;
  if (!(q > 0L)) throw std::domain_error("p(z) is imaginary or zero for z <= -1/e");
  HPReal p = sqrt(q * 2L);
  if (p > work.real("0.5")) throw std::domain_error("hz_branch_check requires |p(z)| <= 0.5");
  if (N < 1) throw std::out_of_range("hz_branch_check needs N >= 1");

  std::vector<BigRational> c = h_branch_coefficients(N + 1);
  c[0] = 1;
  c[2] = BigRational(-11, 24);
  c[3] = BigRational(-4, 135);
  c[4] = BigRational(-1, 1152);
  HPReal branch = work.zero();
  HPReal pk = 1L / (p * p * p);
  for (int i = 0; i <= N + 3; ++i) {
    branch += work.real(c[i]) * pk;
    pk *= p;
  }
  HPReal truncation = abs(work.real(c[N + 4])) * pk / (1L - p / sqrt(work.real(2L)));

  const HPReal tol = ctx.eps();
  SeriesSum h = h_series(zw, work, tol);
  HzBranchCheck out;
  out.difference = abs(h.sum - branch).rounded(ctx.bits());
  out.bound = (h.tail + truncation + tol * max(abs(h.sum), work.real(1L))).rounded(ctx.bits());
  out.series_terms = h.terms;
  return out;
}

HPReal qn_asymptotic(int n, const HPReal& v, const PrecisionContext& ctx, AsymptoticMode mode) {
  if (n < 1) throw std::out_of_range("qn_asymptotic needs n >= 1");
  if (v == 1L) throw std::domain_error("qn_asymptotic excludes v = 1; use qn_at_one_asymptotic");
  if (v < ctx.real("0.5") || v > 1L) throw std::domain_error("qn_asymptotic needs 1/2 <= v < 1");
  PrecisionContext work = ctx.widened(5);
  HPComplex w = w_of_v(v, work);
  HPComplex wn = pow(w, -static_cast<long>(n));
  HPComplex one_w = w + 1L;
  HPComplex bracket = wn / one_w;
  if (mode == AsymptoticMode::extended) {
    bracket -= wn * (work.real(5L) / (24L * n));
    bracket += one_w * wn * (work.real(25L) / (1152L * n * n));
  }
  HPReal value = bracket.re * sqrt(work.real(2L)) / work.pi();
  if (n % 2 != 0) value = -value;
  return value.rounded(ctx.bits());
}

HPReal qn_at_one_asymptotic(int n, const PrecisionContext& ctx) {
  if (n < 1) throw std::out_of_range("qn_at_one_asymptotic needs n >= 1");
  HPReal bracket = ctx.real(static_cast<long>(n)) + ctx.real(BigRational(1, 3)) - ctx.real(BigRational(5, 24 * n));
  return sqrt(ctx.real(2L)) / ctx.pi() * bracket;
}

JumpFormCheck qn_jump_form_check(int n, const HPReal& v, const PrecisionContext& ctx) {
  if (n < 1) throw std::out_of_range("qn_jump_form_check needs n >= 1");
  if (!(v > 0L) || v > ctx.real("0.25")) throw std::domain_error("qn_jump_form_check needs 0 < v <= 1/4");
  PrecisionContext work = ctx.widened(5);
  HPReal vw = v.rounded(work.bits());
  JumpFormCheck out;
  out.q_value = qn_eval(n, 1L - vw * vw * 4L, work);
  XiAlpha xa = xi_alpha(vw, work);
  out.envelope = exp(-log(abs(xa.xi)) * n);
  out.jump_form = sqrt(work.real(2L)) / work.pi() * out.envelope * sin(xa.alpha * n) / xa.alpha;
  out.difference = abs(out.q_value - out.jump_form);
  out.scaled_difference = out.difference / out.envelope;
  out.relative_error = out.difference / abs(out.q_value);
  for (HPReal* r : {&out.q_value, &out.jump_form, &out.difference, &out.envelope, &out.scaled_difference,
                    &out.relative_error})
    *r = r->rounded(ctx.bits());
  return out;
}

DecayFit decay_bound_probe(const HPReal& epsilon, int n_first, int n_last, const PrecisionContext& ctx,
                           int grid_intervals) {
  if (!(epsilon > 0L) || !(epsilon < 1L)) throw std::domain_error("decay probe needs 0 < eps < 1");
  if (n_first < 1 || n_last - n_first < 2) throw DecayFitError("decay fit needs at least three orders");
  if (grid_intervals < 1) throw DecayFitError("decay fit needs a non-empty grid");
  DecayFit fit;
  fit.grid_points = grid_intervals + 1;
  HPReal vmax = 1L - epsilon.rounded(ctx.bits());
  for (int n = n_first; n <= n_last; ++n) {
    QnEvaluator q(n, ctx);
    HPReal best = abs(ctx.real(qn_coeffs(n).coeffs[0]));  // |q_n(v)|/v at v -> 0
    for (int j = 1; j <= grid_intervals; ++j) {
      HPReal v = vmax * j / static_cast<long>(grid_intervals);
      best = max(best, abs(q(v)) / v);
    }
    if (!(best > 0L) || !best.is_finite()) throw DecayFitError("degenerate maximum at n = " + std::to_string(n));
    fit.n_values.push_back(n);
    fit.maxima.push_back(best);
  }
  // least squares: log M_n = log C - n log b
  const long count = static_cast<long>(fit.n_values.size());
  HPReal sx = ctx.zero(), sy = ctx.zero(), sxx = ctx.zero(), sxy = ctx.zero();
  std::vector<HPReal> logs;
  for (size_t i = 0; i < fit.n_values.size(); ++i) {
    HPReal x = ctx.real(static_cast<long>(fit.n_values[i]));
    HPReal y = log(fit.maxima[i]);
    logs.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  HPReal denom = sxx * count - sx * sx;
  if (denom.is_zero()) throw DecayFitError("degenerate design in decay fit");
  HPReal slope = (sxy * count - sx * sy) / denom;
  HPReal intercept = (sy - slope * sx) / count;
  fit.b = exp(-slope);
  fit.C = exp(intercept);
  HPReal sq = ctx.zero();
  for (size_t i = 0; i < logs.size(); ++i) {
    HPReal r = logs[i] - intercept - slope * fit.n_values[i];
    sq += r * r;
  }
  fit.rms_log_residual = sqrt(sq / count);
  return fit;
}

IntegralRepCheck integral_representation_check(const OriginalFn& f, const TransformFn& F, const HPReal& x, int n,
                                               const PrecisionContext& ctx) {
  if (!(x > 0L)) throw std::domain_error("inversion point x must be positive");
  QnEvaluator q(n, ctx);
  const HPReal scale = x.rounded(ctx.bits()) / ctx.ln2();
  RealFunction integrand = [&](const HPReal& u) {
    HPReal v = -exp(-u) * expm1(-u) * 4L;  // 4 e^-u (1 - e^-u)
    return q(v) * f(u * scale, ctx);
  };
  IntegralRepCheck out;
  out.integral = integrate(integrand, ctx.zero(), kInfinity, ctx);
  out.stehfest = stehfest_approx(F, x, n, ctx);
  out.difference = abs(out.integral - out.stehfest);
  return out;
}

}  // namespace stehfest
