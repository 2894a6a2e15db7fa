#include "stehfest/quadrature.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace stehfest {

namespace {

// Integrand seen by the core rule on (-1, 1), expressed through the
// complement cm = 1 - |x| so that nodes next to an endpoint keep full
// relative accuracy. side is +1 for x = 1 - cm, -1 for x = -1 + cm and 0 for
// the centre node x = 0. Returning nullopt ends the sweep on that side.
using CoreIntegrand = std::function<std::optional<HPReal>(const HPReal& cm, int side)>;

struct Node {
  HPReal weight;
  HPReal complement;
};

Node make_node(const HPReal& t, const HPReal& half_pi) {
  HPReal s = half_pi * sinh(t);
  HPReal es = exp(s);
  HPReal es2 = es * es;
  HPReal cm = 2L / (es2 + 1L);
  HPReal ch = es + 1L / es;
  HPReal w = half_pi * cosh(t) * 4L / (ch * ch);
  return {std::move(w), std::move(cm)};
}

QuadratureResult tanh_sinh(const CoreIntegrand& g, const PrecisionContext& ctx,
                           const QuadratureOptions& options) {
  const mpfr_prec_t bits = ctx.bits();
  const HPReal half_pi = ctx.pi() / 2L;
  const HPReal tol = ctx.eps();
  const HPReal tiny = ctx.pow10(-(ctx.digits() + ctx.guard()));
  const HPReal tiny_weight = ctx.pow10(-(ctx.digits() + ctx.guard()) / 2);
  // Beyond this t the complement is below 2^(-8 bits).
  const double s_max = 4.0 * static_cast<double>(bits) * std::log(2.0);
  const double t_max = std::asinh(2.0 * s_max / M_PI);

  long evaluations = 0;
  HPReal sum(bits);  // weighted sum over all nodes so far (step factor excluded)

  // Sweeps one side over t = start, start + stride, ... with stride = h or 2h.
  auto sweep = [&](int side, const HPReal& start, const HPReal& stride, const HPReal& scale) {
    int negligible = 0;
    for (HPReal t = start; t.to_double() <= t_max; t += stride) {
      Node node = make_node(t, half_pi);
      std::optional<HPReal> value = g(node.complement, side);
      if (!value) break;
      ++evaluations;
      HPReal term = node.weight * *value;
      sum += term;
      if (abs(term) < tiny * scale && node.weight < tiny_weight) {
        if (++negligible >= 3) break;
      } else {
        negligible = 0;
      }
    }
  };

  // level 0: h = 1, nodes t = 0, 1, 2, ...
  HPReal h(1L, bits);
  {
    std::optional<HPReal> centre = g(HPReal(1L, bits), 0);
    ++evaluations;
    if (centre) sum += half_pi * *centre;
    HPReal one(1L, bits);
    sweep(+1, one, one, HPReal(1L, bits));
    sweep(-1, one, one, HPReal(1L, bits));
  }
  HPReal previous = sum * h;
  HPReal current = previous;

  for (int level = 1; level <= options.max_level; ++level) {
    HPReal scale = max(HPReal(1L, bits), abs(previous));
    HPReal stride = h;  // odd multiples of the new step h/2
    h /= 2L;
    sweep(+1, h, stride, scale);
    sweep(-1, h, stride, scale);
    current = sum * h;
    HPReal diff = abs(current - previous);
    if (!current.is_finite()) {
      throw QuadratureError("quadrature produced a non-finite estimate", current, previous);
    }
    if (level >= options.min_level && diff <= tol * max(HPReal(1L, bits), abs(current))) {
      return {current, diff, level, evaluations};
    }
    previous = current;
    if (level == options.max_level) break;
  }
  HPReal last = current;
  throw QuadratureError("tanh-sinh refinement did not converge after " +
                            std::to_string(options.max_level) + " levels (last " +
                            last.to_string(20) + ", previous " + previous.to_string(20) + ")",
                        last, previous);
}

}  // namespace

QuadratureResult integrate_detailed(const RealFunction& f, const HPReal& a, const HPReal& b,
                                    const PrecisionContext& ctx, QuadratureOptions options) {
  const mpfr_prec_t bits = ctx.bits();
  HPReal lo = a.rounded(bits);
  HPReal hi = b.rounded(bits);
  if (lo == hi) return {HPReal(bits), HPReal(bits), 0, 0};
  if (hi < lo) {
    QuadratureResult r = integrate_detailed(f, hi, lo, ctx, options);
    r.value = -r.value;
    return r;
  }
  HPReal half = (hi - lo) / 2L;
  HPReal mid = lo + half;
  // A node this close to an endpoint would round onto it.
  HPReal collapse_lo = abs(lo) * HPReal(std::ldexp(1.0, -static_cast<int>(bits) + 4), bits);
  HPReal collapse_hi = abs(hi) * HPReal(std::ldexp(1.0, -static_cast<int>(bits) + 4), bits);
  CoreIntegrand g = [&](const HPReal& cm, int side) -> std::optional<HPReal> {
    if (side == 0) return half * f(mid);
    HPReal offset = half * cm;
    if (side > 0) {
      if (offset <= collapse_hi) return std::nullopt;
      return half * f(hi - offset);
    }
    if (offset <= collapse_lo) return std::nullopt;
    return half * f(lo + offset);
  };
  return tanh_sinh(g, ctx, options);
}

QuadratureResult integrate_detailed(const RealFunction& f, const HPReal& a, Infinity,
                                    const PrecisionContext& ctx, QuadratureOptions options) {
  const mpfr_prec_t bits = ctx.bits();
  HPReal lo = a.rounded(bits);
  HPReal ln2 = ctx.ln2();
  CoreIntegrand g = [&](const HPReal& cm, int side) -> std::optional<HPReal> {
    if (side == 0) return f(lo + ln2);
    if (side > 0) {
      // 1 - s = cm / 2, jacobian 1 / (1 - x) = 1 / cm
      HPReal u = lo - log(cm / 2L);
      return f(u) / cm;
    }
    // 1 - s = 1 - cm / 2, jacobian 1 / (2 - cm)
    HPReal u = lo - log1p(-cm / 2L);
    return f(u) / (2L - cm);
  };
  return tanh_sinh(g, ctx, options);
}

HPReal integrate(const RealFunction& f, const HPReal& a, const HPReal& b,
                 const PrecisionContext& ctx, QuadratureOptions options) {
  return integrate_detailed(f, a, b, ctx, options).value;
}

HPReal integrate(const RealFunction& f, const HPReal& a, Infinity, const PrecisionContext& ctx,
                 QuadratureOptions options) {
  return integrate_detailed(f, a, kInfinity, ctx, options).value;
}

}  // namespace stehfest
