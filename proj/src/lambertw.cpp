#include "stehfest/lambertw.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace stehfest {

namespace {

// s = 1 + W = sum_{k>=1} b_k p^k solves (p^2/2 - 1) s s' = p (s - 1).
// Writing s^2 = sum q_m p^m and matching p^k gives
//   b_k = [(k-1)/4 q_{k-1} - b_{k-1} + [k = 1]] / (k+1) - R_k / 2,
//   R_k = sum_{i=2}^{k-1} b_i b_{k+1-i}.
std::vector<BigRational> extend_branch(std::vector<BigRational> mu, int order) {
  if (mu.empty()) mu = {BigRational(-1), BigRational(1)};
  auto b = [&](int i) -> const BigRational& { return mu[i]; };  // b_i = mu_i for i >= 1
  for (int k = static_cast<int>(mu.size()); k <= order; ++k) {
    BigRational q_prev = 0;  // q_{k-1} = sum_{i+j=k-1, i,j>=1} b_i b_j
    for (int i = 1; i <= k - 2; ++i) q_prev += b(i) * b(k - 1 - i);
    BigRational r = 0;
    for (int i = 2; i <= k - 1; ++i) r += b(i) * b(k + 1 - i);
    BigRational next = (BigRational(k - 1, 4) * q_prev - b(k - 1)) / BigRational(k + 1) - r / 2;
    next.canonicalize();
    mu.push_back(next);
  }
  return mu;
}

HPComplex complex_zero(mpfr_prec_t bits) { return HPComplex(HPReal(bits), HPReal(bits)); }

HPComplex taylor(const HPComplex& z, const PrecisionContext& work) {
  // W(z) = sum_{n>=1} (-n)^(n-1)/n! z^n
  const HPReal tol = work.pow10(-(work.digits() + work.guard()));
  HPComplex sum = complex_zero(work.bits());
  HPComplex zn = z;
  BigInteger fact = 1;
  for (long n = 1; n < 100000; ++n) {
    fact *= n;
    BigInteger num;
    mpz_pow_ui(num.get_mpz_t(), BigInteger(n).get_mpz_t(), static_cast<unsigned long>(n - 1));
    if (n % 2 == 0) num = -num;
    HPComplex term = zn * work.real(BigRational(num, fact));
    sum += term;
    if (n > 2 && abs(term) <= tol * abs(sum)) break;
    zn *= z;
  }
  return sum;
}

HPComplex branch(const HPComplex& q, const PrecisionContext& work) {
  HPComplex p = sqrt(q * work.real(2L));
  HPReal ratio = abs(p) / sqrt(work.real(2L));
  int terms = 8;
  if (!ratio.is_zero()) {
    double r = ratio.to_double();
    double need = (work.digits() + work.guard()) * std::log(10.0) / -std::log(r);
    terms = static_cast<int>(std::ceil(need)) + 8;
  }
  return branch_series_eval(p, terms, *branch_series(terms));
}

HPComplex seed(const HPComplex& z, const HPComplex& q, const PrecisionContext& work) {
  if (abs(q).to_double() < 0.8) {
    HPComplex p = sqrt(q * work.real(2L));
    HPComplex p2 = p * p;
    return p - 1L - p2 / work.real(3L) + p2 * p * work.real(BigRational(11, 72));
  }
  double re = z.re.to_double();
  double im = std::abs(z.im.to_double());
  if (re > -1.0 && re < 1.5 && im < 1.0 && -2.5 * im - 0.2 < re) {
    HPComplex z2 = z * z;
    HPComplex num = z * (z2 + z * work.real(6L) + 3L);
    HPComplex den = z2 * work.real(5L) + z * work.real(9L) + 3L;
    return num / den;
  }
  HPComplex l1 = log(z);
  HPComplex l2 = log(l1);
  return l1 - l2 + l2 / l1;
}

HPComplex halley(const HPComplex& z, const HPComplex& q, const PrecisionContext& work) {
  const HPReal tol = work.pow10(-(work.digits() + work.guard()));
  HPComplex w = seed(z, q, work);
  for (int iter = 0; iter < 200; ++iter) {
    HPComplex ew = exp(w);
    HPComplex f = w * ew - z;
    HPComplex w1 = w + 1L;
    HPComplex denom = ew * w1 - (w + 2L) * f / (w1 * work.real(2L));
    HPComplex step = f / denom;
    w -= step;
    if (abs(step) <= tol * max(abs(w), work.real(1L))) break;
  }
  return w;
}

HPComplex core(const HPComplex& z, const HPComplex& q, const PrecisionContext& ctx, WMethod method) {
  PrecisionContext work = ctx.widened(10);
  if (method == WMethod::automatic) {
    if (z.is_zero()) return complex_zero(ctx.bits());
    if (abs(z) * work.e() < work.real("0.2")) {
      method = WMethod::taylor;
    } else if (abs(q) < work.real("0.05")) {
      method = WMethod::branch_series;
    } else {
      method = WMethod::halley;
    }
  }
  HPComplex w(ctx.bits());
  switch (method) {
    case WMethod::taylor:
      w = taylor(z, work);
      break;
    case WMethod::branch_series:
      w = branch(q, work);
      break;
    default:
      w = halley(z, q, work);
  }
  return HPComplex(w.re.rounded(ctx.bits()), w.im.rounded(ctx.bits()));
}

// Maps to the closed upper half plane; a zero imaginary part becomes +0.
bool normalize_upper(HPComplex& z) {
  if (z.im.is_zero()) {
    z.im = HPReal(z.im.precision());
    return false;
  }
  if (z.im < 0L) {
    z = conj(z);
    return true;
  }
  return false;
}

}  // namespace

std::shared_ptr<const BranchSeries> branch_series(int order) {
  if (order < 1) order = 1;
  static std::mutex mutex;
  static std::shared_ptr<const BranchSeries> current;
  std::lock_guard lock(mutex);
  if (!current || current->order() < order) {
    int target = current ? std::max(order, 2 * current->order()) : std::max(order, 16);
    auto next = std::make_shared<BranchSeries>();
    next->mu = extend_branch(current ? current->mu : std::vector<BigRational>{}, target);
    current = next;
  }
  return current;
}

bool branch_series_resubstitution_check(const BranchSeries& series, int order) {
  if (series.order() < order) throw std::out_of_range("branch series shorter than requested order");
  // s_m = mu_m for m >= 1, s_0 = 0; E = exp(s) via E_m = (1/m) sum_j j s_j E_{m-j}
  std::vector<BigRational> s(order + 1, BigRational(0));
  for (int m = 1; m <= order; ++m) s[m] = series.mu[m];
  std::vector<BigRational> ex(order + 1, BigRational(0));
  ex[0] = 1;
  for (int m = 1; m <= order; ++m) {
    BigRational acc = 0;
    for (int j = 1; j <= m; ++j) acc += BigRational(j) * s[j] * ex[m - j];
    ex[m] = acc / BigRational(m);
  }
  for (int m = 0; m <= order; ++m) {
    // coefficient of p^m in (s - 1) e^s + 1 - p^2/2
    BigRational c = -ex[m];
    for (int j = 1; j <= m; ++j) c += s[j] * ex[m - j];
    if (m == 0) c += 1;
    if (m == 2) c -= BigRational(1, 2);
    if (c != 0) return false;
  }
  return true;
}

HPComplex branch_series_eval(const HPComplex& p, int N, const BranchSeries& series) {
  const mpfr_prec_t bits = p.precision();
  HPReal limit = sqrt(HPReal(2L, bits)) * HPReal("0.9", bits);
  if (abs(p) >= limit) throw std::domain_error("branch series evaluated outside |p| < 0.9 sqrt(2)");
  if (N < 0 || series.order() < N) throw std::out_of_range("branch series holds too few coefficients");
  // Horner from the top coefficient
  HPComplex acc(HPReal(series.mu[N], bits), HPReal(bits));
  for (int n = N - 1; n >= 0; --n) acc = acc * p + HPReal(series.mu[n], bits);
  return acc;
}

HPComplex lambert_w0(const HPComplex& z_in, const PrecisionContext& ctx, WMethod method) {
  PrecisionContext work = ctx.widened(10);
  HPComplex z(z_in.re.rounded(work.bits()), z_in.im.rounded(work.bits()));
  bool flipped = normalize_upper(z);
  HPComplex q = z * work.e() + 1L;
  if (z.im.is_zero()) q.im = work.zero();
  HPComplex w = core(z, q, ctx, method);
  return flipped ? conj(w) : w;
}

HPComplex lambert_w0(const HPReal& z, const PrecisionContext& ctx) {
  return lambert_w0(HPComplex(z.rounded(ctx.bits()), ctx.zero()), ctx);
}

HPComplex lambert_w0_from_q(const HPComplex& q_in, const PrecisionContext& ctx, WMethod method) {
  PrecisionContext work = ctx.widened(10);
  HPComplex q(q_in.re.rounded(work.bits()), q_in.im.rounded(work.bits()));
  bool flipped = normalize_upper(q);
  HPComplex z = (q - 1L) / work.e();
  if (q.im.is_zero()) z.im = work.zero();
  HPComplex w = core(z, q, ctx, method);
  return flipped ? conj(w) : w;
}

HPReal lambert_residual(const HPComplex& w, const HPComplex& z, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPComplex wh(w.re.rounded(work.bits()), w.im.rounded(work.bits()));
  return abs(wh * exp(wh) - z);
}

bool in_region_a(const HPComplex& w) {
  const mpfr_prec_t bits = w.precision();
  HPReal y = w.im;
  if (abs(y) >= const_pi(bits)) return false;
  if (y.is_zero()) return w.re > -1L;
  return w.re > -y * cos(y) / sin(y);
}

HPComplex w_of_v(const HPReal& v_in, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPReal v = v_in.rounded(work.bits());
  if (!(v > 0L) || v > 1L) throw std::domain_error("w(v) requires 0 < v <= 1");
  HPComplex q((v - 1L) / v, work.zero());
  return lambert_w0_from_q(q, ctx);
}

XiAlpha xi_alpha(const HPReal& v_in, const PrecisionContext& ctx) {
  PrecisionContext work = ctx.widened(10);
  HPReal v = v_in.rounded(work.bits());
  if (v < 0L || !(v < work.real("0.5"))) throw std::domain_error("xi(v) requires 0 <= v < 1/2");
  XiAlpha out{v_in.rounded(ctx.bits()), HPComplex(ctx.real(-1L), ctx.zero()), ctx.zero()};
  if (v.is_zero()) return out;
  HPReal four_v2 = v * v * 4L;
  HPComplex q(-four_v2 / (1L - four_v2), work.zero());
  out.xi = lambert_w0_from_q(q, ctx);
  out.alpha = out.xi.im;
  return out;
}

}  // namespace stehfest
