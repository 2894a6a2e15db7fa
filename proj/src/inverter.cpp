#include "stehfest/inverter.hpp"

#include <map>
#include <sstream>

#include "stehfest/coeffs.hpp"
#include "stehfest/lambertw.hpp"
#include "stehfest/quadrature.hpp"

namespace stehfest {

namespace {

// F(m ln2 / x) memoized on the integer m.
class AbscissaCache {
 public:
  AbscissaCache(const TransformFn& F, const HPReal& x, const PrecisionContext& ctx)
      : F_(F), ctx_(ctx), step_(ctx.ln2() / x.rounded(ctx.bits())) {}

  const HPReal& at(int m) {
    auto it = values_.find(m);
    if (it == values_.end()) it = values_.emplace(m, evaluate_transform(F_, step_ * m, ctx_)).first;
    return it->second;
  }
  const HPReal& step() const { return step_; }

 private:
  const TransformFn& F_;
  const PrecisionContext& ctx_;
  HPReal step_;
  std::map<int, HPReal> values_;
};

void check_inputs(const HPReal& x, int order, const PrecisionContext& ctx, PrecisionPolicy policy) {
  if (!(x > 0L)) throw std::domain_error("inversion point x must be positive");
  if (order < 1) throw std::out_of_range("approximation order must be >= 1");
  if (policy == PrecisionPolicy::enforce && ctx.digits() < required_digits(order)) {
    throw std::invalid_argument("working precision " + std::to_string(ctx.digits()) + " below required " +
                                std::to_string(required_digits(order)) + " digits for order " +
                                std::to_string(order));
  }
}

HPReal gaver_sum(AbscissaCache& cache, int k, const PrecisionContext& ctx) {
  std::vector<BigRational> row = gaver_row(k);
  HPReal sum = ctx.zero();
  for (int i = 0; i <= k; ++i) sum += ctx.real(row[i]) * cache.at(k + i);
  return cache.step() * sum;
}

HPReal collapsed_sum(AbscissaCache& cache, int n, const PrecisionContext& ctx) {
  const GaverStehfestCoeffs& coeffs = gaver_stehfest_coeffs(n);
  HPReal sum = ctx.zero();
  for (int k = 1; k <= 2 * n; ++k) sum += ctx.real(coeffs.a[k - 1]) * cache.at(k);
  return cache.step() * sum;
}

// Solves the 3x3 system in place by Gaussian elimination with partial pivoting.
std::vector<HPReal> solve3(std::vector<std::vector<HPReal>> a, std::vector<HPReal> b) {
  const int n = 3;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    if (a[pivot][col].is_zero()) throw ExpansionFitError("singular normal equations", a[pivot][col]);
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      HPReal factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<HPReal> x(n, HPReal(b[0].precision()));
  for (int r = n - 1; r >= 0; --r) {
    HPReal acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace

HPReal evaluate_transform(const TransformFn& F, const HPReal& z, const PrecisionContext& ctx) {
  HPReal value(ctx.bits());
  try {
    value = F.eval(z, ctx);
  } catch (const TransformEvaluationError&) {
    throw;
  } catch (const std::exception& err) {
    throw TransformEvaluationError(F.label + ": " + err.what() + " at z = " + z.to_string(20), z);
  }
  if (!value.is_finite()) throw TransformEvaluationError(F.label + ": non-finite value at z = " + z.to_string(20), z);
  return value;
}

HPReal gaver_approx(const TransformFn& F, const HPReal& x, int k, const PrecisionContext& ctx, PrecisionPolicy policy) {
  check_inputs(x, k, ctx, policy);
  AbscissaCache cache(F, x, ctx);
  return gaver_sum(cache, k, ctx);
}

HPReal stehfest_approx(const TransformFn& F, const HPReal& x, int n, const PrecisionContext& ctx,
                       PrecisionPolicy policy) {
  check_inputs(x, n, ctx, policy);
  AbscissaCache cache(F, x, ctx);
  return collapsed_sum(cache, n, ctx);
}

HPReal stehfest_approx_via_gaver(const TransformFn& F, const HPReal& x, int n, const PrecisionContext& ctx,
                                 PrecisionPolicy policy) {
  check_inputs(x, n, ctx, policy);
  AbscissaCache cache(F, x, ctx);
  StehfestWeights w = stehfest_weights(n);
  HPReal sum = ctx.zero();
  for (int k = 1; k <= n; ++k) sum += ctx.real(w.c[k - 1]) * gaver_sum(cache, k, ctx);
  return sum;
}

InversionReport invert_ladder(const TransformFn& F, const HPReal& x, int n_max, const std::optional<OriginalFn>& ref,
                              const PrecisionContext& ctx, const LadderOptions& options) {
  if (n_max < 1 || options.n_min < 1 || options.n_min > n_max) throw std::out_of_range("ladder needs 1 <= n_min <= n_max");
  int digits = options.allow_low_precision ? ctx.digits() : std::max(ctx.digits(), required_digits(n_max));
  PrecisionContext work = ctx.with_digits(digits);
  HPReal xw = x.rounded(work.bits());
  check_inputs(xw, n_max, work, options.allow_low_precision ? PrecisionPolicy::allow_low : PrecisionPolicy::enforce);

  InversionReport report;
  report.label = F.label;
  report.x = xw;
  report.digits_used = digits;
  report.oscillatory = F.oscillatory;
  if (ref) report.reference = (*ref)(xw, work);

  AbscissaCache cache(F, xw, work);
  for (int n = options.n_min; n <= n_max; ++n) {
    LadderEntry entry;
    entry.n = n;
    entry.value = collapsed_sum(cache, n, work);
    if (report.reference) entry.abs_error = abs(entry.value - *report.reference);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

nlohmann::ordered_json to_json(const InversionReport& report) {
  const int d = report.digits_used;
  nlohmann::ordered_json out;
  out["label"] = report.label;
  out["x"] = report.x.to_string(d);
  out["digits"] = d;
  out["oscillatory"] = report.oscillatory;
  out["reference"] = report.reference ? nlohmann::ordered_json(report.reference->to_string(d)) : nlohmann::ordered_json();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const LadderEntry& e : report.entries) {
    nlohmann::ordered_json row;
    row["n"] = e.n;
    row["value"] = e.value.to_string(d);
    row["abs_error"] = e.abs_error ? nlohmann::ordered_json(e.abs_error->to_string(d)) : nlohmann::ordered_json();
    entries.push_back(std::move(row));
  }
  out["entries"] = std::move(entries);
  return out;
}

std::string to_csv(const InversionReport& report) {
  std::ostringstream os;
  os << "n,value,abs_error,digits\n";
  for (const LadderEntry& e : report.entries) {
    os << e.n << ',' << e.value.to_string(report.digits_used) << ','
       << (e.abs_error ? e.abs_error->to_string(report.digits_used) : "") << ',' << report.digits_used << '\n';
  }
  return os.str();
}

HPReal expansion_probe(const TransformFn& F, const HPReal& x, const HPReal& f_ref, const KRange& k_range,
                       const PrecisionContext& ctx) {
  return expansion_probe(F, x, f_ref, k_range, ctx, ctx.real("1e-4"));
}

HPReal expansion_probe(const TransformFn& F, const HPReal& x, const HPReal& f_ref, const KRange& k_range,
                       const PrecisionContext& ctx, const HPReal& tolerance) {
  if (k_range.step < 1 || k_range.first < 1) throw std::invalid_argument("k range must be positive and increasing");
  std::vector<int> ks;
  for (int k = k_range.first; k <= k_range.last; k += k_range.step) ks.push_back(k);
  if (ks.size() < 4) throw std::invalid_argument("expansion probe needs at least 4 values of k");

  PrecisionContext work = ctx.with_digits(std::max(ctx.digits(), required_digits(ks.back())));
  HPReal xw = x.rounded(work.bits());
  HPReal ref = f_ref.rounded(work.bits());
  AbscissaCache cache(F, xw, work);
  std::vector<HPReal> ys;
  for (int k : ks) ys.push_back((gaver_sum(cache, k, work) - ref) * k);

  std::vector<std::vector<HPReal>> ata(3, std::vector<HPReal>(3, work.zero()));
  std::vector<HPReal> aty(3, work.zero());
  auto basis = [&](int k) {
    HPReal inv = work.real(1L) / k;
    return std::vector<HPReal>{work.real(1L), inv, inv * inv};
  };
  for (size_t i = 0; i < ks.size(); ++i) {
    std::vector<HPReal> row = basis(ks[i]);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) ata[r][c] += row[r] * row[c];
      aty[r] += row[r] * ys[i];
    }
  }
  // A constant original makes every y_k vanish up to rounding.
  HPReal scale = work.zero();
  for (const HPReal& y : ys) scale = max(scale, abs(y));
  if (scale <= ctx.eps()) return ctx.zero();

  std::vector<HPReal> beta = solve3(ata, aty);
  HPReal sq = work.zero();
  for (size_t i = 0; i < ks.size(); ++i) {
    std::vector<HPReal> row = basis(ks[i]);
    HPReal resid = ys[i] - beta[0] * row[0] - beta[1] * row[1] - beta[2] * row[2];
    sq += resid * resid;
  }
  HPReal rms = sqrt(sq / static_cast<long>(ks.size()));
  if (rms > tolerance * max(work.real(1L), abs(beta[0]))) {
    throw ExpansionFitError("expansion fit residual " + rms.to_string(6) + " above tolerance", rms);
  }
  return beta[0].rounded(ctx.bits());
}

HPReal equivalence_probe(const OriginalFn& f, const HPReal& x, const HPReal& c, const HPReal& eps, int n,
                         const PrecisionContext& ctx) {
  if (!(eps > 0L) || !(eps < ctx.real("0.25"))) throw std::domain_error("equivalence probe needs 0 < eps < 1/4");
  if (n < 1) throw std::out_of_range("equivalence probe needs n >= 1");
  if (!(x > 0L)) throw std::domain_error("inversion point x must be positive");
  const HPReal xw = x.rounded(ctx.bits());
  const HPReal two_c = c.rounded(ctx.bits()) * 2L;
  const HPReal half = ctx.real("0.5");
  RealFunction integrand = [&](const HPReal& v) {
    HPReal bracket = f(-xw * log2(half + v), ctx) + f(-xw * log2(half - v), ctx) - two_c;
    if (bracket.is_zero()) return bracket;
    XiAlpha xa = xi_alpha(v, ctx);
    HPReal kernel = xa.alpha.is_zero() ? ctx.real(static_cast<long>(n)) : sin(xa.alpha * n) / xa.alpha;
    return exp(-log(abs(xa.xi)) * n) * kernel * bracket;
  };
  return integrate(integrand, ctx.zero(), eps.rounded(ctx.bits()), ctx);
}

}  // namespace stehfest
