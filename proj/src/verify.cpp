#include "stehfest/verify.hpp"

#include <future>
#include <stdexcept>

#include "stehfest/coeffs.hpp"
#include "stehfest/lambertw.hpp"
#include "stehfest/pairs.hpp"
#include "stehfest/qpoly.hpp"

namespace stehfest {

namespace {

using json = nlohmann::ordered_json;

std::string str(const HPReal& x, int digits = 12) { return x.to_string(digits); }

CheckResult check_vandermonde() {
  CheckResult r{"vandermonde"};
  int vandermonde_failures = 0, sum_failures = 0, cross_failures = 0;
  for (int n = 1; n <= 15; ++n) {
    if (!vandermonde_check(stehfest_weights(n))) ++vandermonde_failures;
    if (constant_sum(gaver_stehfest_coeffs(n)) != 1) ++sum_failures;
    if (n <= 12 && gaver_stehfest_coeffs_via_gaver(n).a != gaver_stehfest_coeffs(n).a) ++cross_failures;
  }
  r.metrics["vandermonde_failures"] = vandermonde_failures;
  r.metrics["constant_sum_failures"] = sum_failures;
  r.metrics["cross_construction_failures"] = cross_failures;
  r.grid["n"] = {1, 15};
  r.grid["cross_construction_n"] = {1, 12};
  r.passed = vandermonde_failures == 0 && sum_failures == 0 && cross_failures == 0;
  return r;
}

CheckResult check_genfun() {
  CheckResult r{"genfun"};
  r.passed = true;
  json held = json::object();
  for (const char* v : {"1/3", "1/2", "1"}) {
    bool ok = genfun_identity_check(20, parse_rational(v));
    held[v] = ok;
    r.passed = r.passed && ok;
  }
  r.metrics["identity_holds"] = held;
  r.grid["n_max"] = 20;
  r.grid["v"] = {"1/3", "1/2", "1"};
  return r;
}

CheckResult check_lambertw() {
  CheckResult r{"lambertw"};
  PrecisionContext ctx(40);
  HPReal scale = ctx.pow10(-ctx.digits() + 5);
  HPReal worst = ctx.zero();
  int outside_a = 0, points = 0;
  auto probe = [&](const HPComplex& z, bool boundary) {
    HPComplex w = lambert_w0(z, ctx);
    worst = max(worst, lambert_residual(w, z, ctx) / (max(abs(z), ctx.real(1L)) * scale));
    if (!boundary && !in_region_a(w)) ++outside_a;
    ++points;
  };
  // 20 radii in [1e-3, 1e2] times 30 angles strictly inside (-pi, pi)
  for (int i = 0; i < 20; ++i) {
    HPReal radius = pow(ctx.real(10L), ctx.real(-3L) + ctx.real(5L) * i / 19L);
    for (int j = 0; j < 30; ++j) {
      HPReal theta = ctx.pi() * (ctx.real(2L * j + 1) / 30L - 1L);
      probe(HPComplex(radius * cos(theta), radius * sin(theta)), false);
    }
  }
  HPReal minus_inv_e = -1L / ctx.e();
  for (int j = 1; j <= 400; ++j) probe(HPComplex(minus_inv_e - (ctx.real(40L) + minus_inv_e) * j / 400L, ctx.zero()), true);

  HPReal w2 = abs(lambert_w0(-2L / ctx.e(), ctx));
  HPReal v2 = ctx.real("1e-2");
  HPReal root8 = sqrt(ctx.real(8L));
  HPReal cubic = (xi_alpha(v2, ctx).alpha - root8 * v2) / (v2 * v2 * v2);
  HPReal cubic_target = sqrt(ctx.real(2L)) * 14L / 9L;
  HPReal cubic_rel = abs(cubic / cubic_target - 1L);

  r.metrics["max_scaled_residual"] = str(worst);
  r.metrics["outside_region_a"] = outside_a;
  r.metrics["abs_w_minus_2_over_e"] = str(w2);
  r.metrics["alpha_cubic_coefficient"] = str(cubic);
  r.metrics["alpha_cubic_relative_error"] = str(cubic_rel);
  r.grid["digits"] = ctx.digits();
  r.grid["points"] = points;
  r.grid["radii"] = {"1e-3", "1e2"};
  r.grid["cut"] = {"-40", "-1/e"};
  r.passed = worst <= 1L && outside_a == 0 && abs(w2 - ctx.real("1.2508")) <= ctx.real("1e-3") &&
             cubic_rel <= ctx.real("0.01");
  return r;
}

CheckResult check_qn_asymptotics() {
  CheckResult r{"qn-asymptotics"};
  PrecisionContext ctx(30);
  r.passed = true;

  json at_one = json::object();
  HPReal first;
  HPReal largest = ctx.zero();
  for (int n : {50, 100, 150, 200}) {
    HPReal scaled = abs(qn_eval(n, ctx.real(1L), ctx) - qn_at_one_asymptotic(n, ctx)) * (static_cast<long>(n) * n * n);
    if (n == 50) first = scaled;
    largest = max(largest, scaled);
    at_one[std::to_string(n)] = str(scaled);
  }
  r.metrics["q_at_one_residual_n3"] = at_one;
  r.passed = r.passed && largest <= first * 2L;

  json plain = json::object();
  HPReal prev = ctx.real(1L);
  for (int n : {50, 100, 200}) {
    HPReal v = ctx.real("0.75");
    HPReal exact = qn_eval(n, v, ctx);
    HPReal rel = abs(exact - qn_asymptotic(n, v, ctx)) / abs(exact);
    plain[std::to_string(n)] = str(rel);
    r.passed = r.passed && rel < prev;
    prev = rel;
  }
  r.metrics["plain_relative_error_v0.75"] = plain;

  json jump = json::object();
  HPReal worst_scaled = ctx.zero();
  for (const char* v : {"0.05", "0.1", "0.2"}) {
    json row = json::object();
    for (int n : {50, 100, 200}) {
      JumpFormCheck c = qn_jump_form_check(n, ctx.real(v), ctx);
      worst_scaled = max(worst_scaled, c.scaled_difference);
      row[std::to_string(n)] = {{"scaled_difference", str(c.scaled_difference)},
                                {"relative_error", str(c.relative_error)}};
    }
    jump[v] = row;
  }
  r.metrics["jump_form"] = jump;
  r.metrics["jump_form_max_scaled_difference"] = str(worst_scaled);
  r.passed = r.passed && worst_scaled < ctx.real("0.5");

  r.grid["digits"] = ctx.digits();
  r.grid["q_at_one_n"] = {50, 100, 150, 200};
  r.grid["plain_n"] = {50, 100, 200};
  r.grid["jump_form_v"] = {"0.05", "0.1", "0.2"};
  r.grid["jump_form_n"] = {50, 100, 200};
  return r;
}

struct SmoothCase {
  const char* name;
  OriginalFn f;
  TransformFn F;
};

std::vector<SmoothCase> integral_cases() {
  return {
      {"1", [](const HPReal& x, const PrecisionContext&) { return HPReal(1L, x.precision()); },
       {[](const HPReal& z, const PrecisionContext&) { return 1L / z; }, "1/z"}},
      {"exp(-x)", [](const HPReal& x, const PrecisionContext&) { return exp(-x); },
       {[](const HPReal& z, const PrecisionContext&) { return 1L / (z + 1L); }, "1/(z+1)"}},
      {"x", [](const HPReal& x, const PrecisionContext&) { return x; },
       {[](const HPReal& z, const PrecisionContext&) { return 1L / (z * z); }, "1/z^2"}},
  };
}

CheckResult check_integral_rep() {
  CheckResult r{"integral-rep"};
  PrecisionContext ctx(28);
  HPReal tol = ctx.pow10(-ctx.digits() / 2);
  HPReal worst = ctx.zero();
  for (const SmoothCase& c : integral_cases())
    for (long x : {1L, 2L})
      for (int n : {2, 4, 8}) worst = max(worst, integral_representation_check(c.f, c.F, ctx.real(x), n, ctx).difference);
  r.metrics["max_difference"] = str(worst);
  r.metrics["tolerance"] = str(tol);
  r.grid["digits"] = ctx.digits();
  r.grid["f"] = {"1", "exp(-x)", "x"};
  r.grid["x"] = {1, 2};
  r.grid["n"] = {2, 4, 8};
  r.passed = worst <= tol;
  return r;
}

CheckResult check_decay_bound() {
  CheckResult r{"decay-bound"};
  PrecisionContext ctx(20);
  DecayFit fit = decay_bound_probe(ctx.real("0.1"), 10, 40, ctx);
  r.metrics["b"] = str(fit.b);
  r.metrics["C"] = str(fit.C);
  r.metrics["rms_log_residual"] = str(fit.rms_log_residual);
  r.grid["epsilon"] = "0.1";
  r.grid["n"] = {fit.n_values.front(), fit.n_values.back()};
  r.grid["v_points"] = fit.grid_points;
  r.passed = fit.b > 1L;
  return r;
}

CheckResult check_corpus() {
  CheckResult r{"corpus"};
  PrecisionContext ctx(20);
  r.passed = true;
  for (const TransformPair& p : corpus()) {
    json entry = json::object();
    HPReal laplace = ctx.zero();
    for (long z : {1L, 2L, 5L}) {
      HPReal zz = ctx.real(z);
      HPReal rhs = p.F.eval(zz, ctx);
      laplace = max(laplace, abs(laplace_integral(p, zz, ctx) - rhs) / max(abs(rhs), ctx.real(1L)));
    }
    bool laplace_ok = laplace <= ctx.eps();
    entry["laplace_relative_error"] = str(laplace);
    InversionReport ladder = run_pair(p, ctx.real(1L), 18, ctx);
    const HPReal& early = *ladder.entries[5].abs_error;
    const HPReal& last = *ladder.entries.back().abs_error;
    entry["abs_error_n6"] = str(early);
    entry["abs_error_n18"] = str(last);
    if (p.F.oscillatory) {
      // reported only
      entry["excluded"] = true;
    } else {
      // smooth originals converge outright; at a jump the ladder only creeps toward the midpoint
      bool converging = p.cls == RegularityClass::smooth ? last <= ctx.real("1e-6")
                                                         : last < early && last < ctx.real("0.05");
      entry["excluded"] = false;
      r.passed = r.passed && converging && laplace_ok;
    }
    r.passed = r.passed && laplace_ok;
    r.metrics[p.name] = entry;
  }
  r.grid["x"] = 1;
  r.grid["n"] = {6, 18};
  r.grid["laplace_z"] = {1, 2, 5};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"vandermonde",  "genfun",      "lambertw", "qn-asymptotics",
                                              "integral-rep", "decay-bound", "corpus"};
  return names;
}

CheckResult run_suite(const std::string& name) {
  if (name == "vandermonde") return check_vandermonde();
  if (name == "genfun") return check_genfun();
  if (name == "lambertw") return check_lambertw();
  if (name == "qn-asymptotics") return check_qn_asymptotics();
  if (name == "integral-rep") return check_integral_rep();
  if (name == "decay-bound") return check_decay_bound();
  if (name == "corpus") return check_corpus();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<CheckResult> run_suites(const std::vector<std::string>& names) {
  std::vector<std::future<CheckResult>> pending;
  for (const std::string& name : names) pending.push_back(std::async(std::launch::async, run_suite, name));
  std::vector<CheckResult> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

nlohmann::ordered_json to_json(const CheckResult& result) {
  return {{"check", result.check},
          {"status", result.passed ? "pass" : "fail"},
          {"metrics", result.metrics},
          {"grid", result.grid}};
}

}  // namespace stehfest
