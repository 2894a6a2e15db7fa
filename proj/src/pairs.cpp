#include "stehfest/pairs.hpp"

#include <stdexcept>

#include "stehfest/quadrature.hpp"

namespace stehfest {

namespace {

HPReal unit(const HPReal& like, long value) { return HPReal(value, like.precision()); }

std::vector<TransformPair> build_corpus() {
  std::vector<TransformPair> out;

  out.push_back({"constant",
                 {[](const HPReal& z, const PrecisionContext&) { return 1L / z; }, "constant"},
                 [](const HPReal& x, const PrecisionContext&) { return unit(x, 1); },
                 RegularityClass::smooth,
                 {},
                 "1/z",
                 "1"});

  out.push_back({"ramp",
                 {[](const HPReal& z, const PrecisionContext&) { return 1L / (z * z); }, "ramp"},
                 [](const HPReal& x, const PrecisionContext&) { return x; },
                 RegularityClass::smooth,
                 {},
                 "1/z^2",
                 "x"});

  out.push_back({"exponential",
                 {[](const HPReal& z, const PrecisionContext&) { return 1L / (z + 1L); }, "exponential"},
                 [](const HPReal& x, const PrecisionContext&) { return exp(-x); },
                 RegularityClass::smooth,
                 {},
                 "1/(z+1)",
                 "exp(-x)"});

  out.push_back({"root_singular",
                 {[](const HPReal& z, const PrecisionContext& ctx) { return sqrt(ctx.pi() / z); }, "root_singular"},
                 [](const HPReal& x, const PrecisionContext&) { return 1L / sqrt(x); },
                 RegularityClass::smooth,
                 {},
                 "sqrt(pi/z)",
                 "1/sqrt(x)"});

  out.push_back({"step",
                 {[](const HPReal& z, const PrecisionContext&) { return exp(-z) / z; }, "step"},
                 [](const HPReal& x, const PrecisionContext&) { return unit(x, x >= 1L ? 1 : 0); },
                 RegularityClass::bounded_variation_jump,
                 {Jump{1, 0, 1}},
                 "exp(-z)/z",
                 "1 if x >= 1 else 0"});

  std::vector<Jump> square_jumps;
  for (int k = 1; k <= kSquareWaveHorizon; ++k) square_jumps.push_back(k % 2 ? Jump{k, 1, 0} : Jump{k, 0, 1});
  out.push_back({"square_wave",
                 {[](const HPReal& z, const PrecisionContext&) { return 1L / (z * (1L + exp(-z))); }, "square_wave"},
                 [](const HPReal& x, const PrecisionContext&) {
                   long k = floor(x).to_long();
                   return unit(x, k % 2 == 0 ? 1 : 0);
                 },
                 RegularityClass::bounded_variation_jump,
                 square_jumps,
                 "1/(z(1+exp(-z)))",
                 "1 if floor(x) is even else 0"});

  TransformPair sine{"sine",
                     {[](const HPReal& z, const PrecisionContext&) { return 1L / (z * z + 1L); }, "sine", true},
                     [](const HPReal& x, const PrecisionContext&) { return sin(x); },
                     RegularityClass::oscillatory,
                     {},
                     "1/(1+z^2)",
                     "sin(x)"};
  out.push_back(sine);
  return out;
}

}  // namespace

std::string to_string(RegularityClass cls) {
  switch (cls) {
    case RegularityClass::smooth:
      return "smooth";
    case RegularityClass::dini:
      return "dini";
    case RegularityClass::bounded_variation_jump:
      return "bounded-variation-jump";
    case RegularityClass::oscillatory:
      return "oscillatory";
  }
  return "unknown";
}

const std::vector<TransformPair>& corpus() {
  static const std::vector<TransformPair> pairs = build_corpus();
  return pairs;
}

const TransformPair& find_pair(const std::string& name) {
  for (const TransformPair& p : corpus())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown transform pair '" + name + "'");
}

TransformPair bump_pair(const BigRational& a, const BigRational& b) {
  if (!(a < b) || a < 0) throw std::invalid_argument("bump needs 0 <= a < b");
  TransformPair p;
  p.name = "bump";
  p.F = {[a, b](const HPReal& z, const PrecisionContext& ctx) {
           return (exp(-z * ctx.real(a)) - exp(-z * ctx.real(b))) / z;
         },
         "bump"};
  p.f_ref = [a, b](const HPReal& x, const PrecisionContext& ctx) {
    return unit(x, (x >= ctx.real(a) && x < ctx.real(b)) ? 1 : 0);
  };
  p.cls = RegularityClass::bounded_variation_jump;
  p.jumps = {Jump{a, 0, 1}, Jump{b, 1, 0}};
  p.transform_formula = "(exp(-a z) - exp(-b z))/z";
  p.original_formula = "1 if a <= x < b else 0";
  return p;
}

const Jump* jump_at(const TransformPair& pair, const HPReal& x, const PrecisionContext& ctx) {
  for (const Jump& j : pair.jumps) {
    HPReal loc = ctx.real(j.location);
    if (abs(x - loc) <= ctx.eps() * max(abs(loc), ctx.real(1L))) return &j;
  }
  return nullptr;
}

HPReal pair_target(const TransformPair& pair, const HPReal& x, const PrecisionContext& ctx) {
  if (const Jump* j = jump_at(pair, x, ctx)) return ctx.real(j->jordan_target());
  return pair.f_ref(x.rounded(ctx.bits()), ctx);
}

DiniEstimate dini_integral_estimate(const TransformPair& pair, const HPReal& x, const HPReal& c, const HPReal& eps,
                                    const PrecisionContext& ctx) {
  if (!(eps > 0L) || !(eps < ctx.real("0.25"))) throw std::domain_error("Dini estimate needs 0 < eps < 1/4");
  if (!(x > 0L)) throw std::domain_error("inversion point x must be positive");
  const HPReal xw = x.rounded(ctx.bits());
  const HPReal two_c = c.rounded(ctx.bits()) * 2L;
  const HPReal half = ctx.real("0.5");
  // v = e^s turns |bracket(v)|/v dv into |bracket(e^s)| ds
  RealFunction integrand = [&](const HPReal& s) {
    HPReal v = exp(s);
    return abs(pair.f_ref(-xw * log2(half + v), ctx) + pair.f_ref(-xw * log2(half - v), ctx) - two_c);
  };
  DiniEstimate out;
  out.v_min = ctx.pow10(-(ctx.digits() / 2));
  HPReal s_min = log(out.v_min);
  out.value = integrate(integrand, s_min, log(eps.rounded(ctx.bits())), ctx);
  out.increment = integrate(integrand, s_min - log(ctx.real(10L)), s_min, ctx);
  out.divergent = out.increment > log(ctx.real(10L)) * ctx.pow10(-(ctx.digits() / 4));
  return out;
}

InversionReport run_pair(const TransformPair& pair, const HPReal& x, int n_max, const PrecisionContext& ctx,
                         const LadderOptions& options) {
  OriginalFn target = [&pair](const HPReal& at, const PrecisionContext& c) { return pair_target(pair, at, c); };
  InversionReport report = invert_ladder(pair.F, x, n_max, target, ctx, options);
  report.label = pair.name;
  return report;
}

HPReal laplace_integral(const TransformPair& pair, const HPReal& z, const PrecisionContext& ctx) {
  const HPReal zw = z.rounded(ctx.bits());
  RealFunction integrand = [&](const HPReal& x) { return exp(-zw * x) * pair.f_ref(x, ctx); };
  HPReal total = ctx.zero();
  HPReal left = ctx.zero();
  for (const Jump& j : pair.jumps) {
    HPReal loc = ctx.real(j.location);
    if (loc > left) total += integrate(integrand, left, loc, ctx);
    left = loc;
  }
  total += integrate(integrand, left, kInfinity, ctx);
  return total;
}

nlohmann::ordered_json corpus_manifest() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const TransformPair& p : corpus()) {
    nlohmann::ordered_json entry;
    entry["name"] = p.name;
    entry["class"] = to_string(p.cls);
    entry["transform"] = p.transform_formula;
    entry["original"] = p.original_formula;
    entry["oscillatory"] = p.F.oscillatory;
    nlohmann::ordered_json jumps = nlohmann::ordered_json::array();
    for (const Jump& j : p.jumps) {
      jumps.push_back({{"location", to_exact_string(j.location)},
                       {"left", to_exact_string(j.left)},
                       {"right", to_exact_string(j.right)},
                       {"target", to_exact_string(j.jordan_target())}});
    }
    entry["jumps"] = std::move(jumps);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace stehfest
