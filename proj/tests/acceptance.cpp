// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance               all criteria
//   acceptance --criterion N one criterion
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "stehfest/coeffs.hpp"
#include "stehfest/lambertw.hpp"
#include "stehfest/pairs.hpp"
#include "stehfest/qpoly.hpp"
#include "stehfest/verify.hpp"

using namespace stehfest;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(const HPReal& x) { return x.to_string(4); }

Outcome coefficient_identities() {
  auto start = Clock::now();
  CheckResult r = run_suite("vandermonde");
  double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "n=1..15 sums/Vandermonde, cross-construction n<=12, failures " << r.metrics["vandermonde_failures"] << "/"
     << r.metrics["constant_sum_failures"] << "/" << r.metrics["cross_construction_failures"] << ", " << elapsed << " s";
  return {r.passed && elapsed < 10.0, os.str()};
}

Outcome constant_exactness() {
  PrecisionContext ctx(required_digits(12));
  HPReal tol = ctx.pow10(-ctx.digits() + ctx.guard());
  HPReal worst = ctx.zero();
  for (const BigRational& c : {BigRational(1), BigRational(-3), BigRational(1, 7)}) {
    TransformFn F{[c](const HPReal& z, const PrecisionContext& k) { return k.real(c) / z; }, "c/z"};
    for (const char* x : {"1/2", "1", "2"})
      for (int n = 1; n <= 12; ++n) worst = max(worst, abs(stehfest_approx(F, ctx.real(x), n, ctx) - ctx.real(c)));
  }
  return {worst <= tol, "max |f_n - c| = " + sci(worst) + " (bound " + sci(tol) + ")"};
}

Outcome two_path_agreement() {
  bool passed = true;
  double worst_ratio = 0;
  for (const TransformPair& p : corpus()) {
    for (int n = 1; n <= 10; ++n) {
      PrecisionContext ctx(auto_digits(n));
      HPReal tol = ctx.pow10(-ctx.digits() + ctx.guard() + 2);
      for (const char* x : {"0.5", "1", "2"}) {
        HPReal d = abs(stehfest_approx(p.F, ctx.real(x), n, ctx) - stehfest_approx_via_gaver(p.F, ctx.real(x), n, ctx));
        worst_ratio = std::max(worst_ratio, (d / tol).to_double());
        passed = passed && d <= tol;
      }
    }
  }
  std::ostringstream os;
  os << "corpus x in {0.5,1,2}, n<=10: max difference / bound = " << worst_ratio;
  return {passed, os.str()};
}

Outcome smooth_convergence() {
  PrecisionContext ctx(required_digits(14));
  TransformFn F{[](const HPReal& z, const PrecisionContext&) { return 1L / (z + 1L); }, "1/(z+1)"};
  HPReal target = exp(-ctx.real(1L));
  HPReal e4 = abs(stehfest_approx(F, ctx.real(1L), 4, ctx) - target);
  HPReal e14 = abs(stehfest_approx(F, ctx.real(1L), 14, ctx) - target);
  const auto& oracle = testing::oracle()["ladders"]["exponential_x1"];
  HPReal o4 = testing::fixture_real(oracle[3], ctx);
  HPReal o14 = testing::fixture_real(oracle[13], ctx);
  bool pinned = abs(e4 / o4 - 1L) <= ctx.real("1e-6") && abs(e14 / o14 - 1L) <= ctx.real("1e-6");
  HPReal ratio = e4 / e14;
  return {e14 <= ctx.real("1e-6") && ratio >= 10000L && pinned,
          "err(14) = " + sci(e14) + ", err(4)/err(14) = " + sci(ratio) + (pinned ? ", matches oracle" : ", oracle mismatch")};
}

Outcome jump_midpoint() {
  PrecisionContext ctx(auto_digits(18));
  InversionReport r = run_pair(find_pair("step"), ctx.real(1L), 18, ctx);
  const HPReal& e6 = *r.entries[5].abs_error;
  const HPReal& e18 = *r.entries[17].abs_error;
  return {e18 < ctx.real("0.05") && e18 < e6, "|f_18(1) - 1/2| = " + sci(e18) + ", |f_6(1) - 1/2| = " + sci(e6)};
}

Outcome generating_function() {
  auto start = Clock::now();
  bool held = genfun_identity_check(20, BigRational(1, 3));
  double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "exact identity n<=20 at v=1/3 " << (held ? "holds" : "fails") << ", " << elapsed << " s";
  return {held && elapsed < 60.0, os.str()};
}

Outcome q_at_one_refinement() {
  PrecisionContext ctx(30);
  HPReal first, largest = ctx.zero();
  for (int n : {50, 100, 150, 200}) {
    HPReal scaled = abs(qn_eval(n, ctx.real(1L), ctx) - qn_at_one_asymptotic(n, ctx)) * (static_cast<long>(n) * n * n);
    if (n == 50) first = scaled;
    largest = max(largest, scaled);
  }
  return {largest <= first * 2L, "max n^3 residual = " + sci(largest) + ", at n=50 = " + sci(first)};
}

Outcome oscillatory_asymptotics() {
  PrecisionContext ctx(30);
  bool passed = true;
  std::ostringstream os;
  for (const char* v : {"0.05", "0.1", "0.2"}) {
    HPReal prev = ctx.zero();
    bool first = true;
    os << "v=" << v << ":";
    for (int n : {50, 100, 200}) {
      HPReal rel = qn_jump_form_check(n, ctx.real(v), ctx).relative_error;
      os << ' ' << rel.to_string(3);
      if (!first && !(rel < prev)) passed = false;
      if (n == 200 && rel > ctx.real("0.1")) passed = false;
      prev = rel;
      first = false;
    }
    os << "; ";
  }
  os << "need <= 0.1 at n=200 and decreasing";
  return {passed, os.str()};
}

Outcome lambert_w() {
  CheckResult r = run_suite("lambertw");
  std::ostringstream os;
  os << "1000 points, max residual / bound = " << r.metrics["max_scaled_residual"].get<std::string>()
     << ", |W(-2/e)| = " << r.metrics["abs_w_minus_2_over_e"].get<std::string>()
     << ", alpha cubic rel. error = " << r.metrics["alpha_cubic_relative_error"].get<std::string>();
  return {r.passed, os.str()};
}

Outcome integral_representation() {
  PrecisionContext ctx(28);
  HPReal tol = ctx.pow10(-ctx.digits() / 2);
  struct Case {
    OriginalFn f;
    TransformFn F;
  };
  std::vector<Case> cases{
      {[](const HPReal& x, const PrecisionContext&) { return HPReal(1L, x.precision()); },
       {[](const HPReal& z, const PrecisionContext&) { return 1L / z; }, "1/z"}},
      {[](const HPReal& x, const PrecisionContext&) { return exp(-x); },
       {[](const HPReal& z, const PrecisionContext&) { return 1L / (z + 1L); }, "1/(z+1)"}},
      {[](const HPReal& x, const PrecisionContext&) { return x; },
       {[](const HPReal& z, const PrecisionContext&) { return 1L / (z * z); }, "1/z^2"}},
  };
  HPReal worst = ctx.zero();
  for (const Case& c : cases)
    for (long x : {1L, 2L})
      for (int n = 1; n <= 8; ++n) worst = max(worst, integral_representation_check(c.f, c.F, ctx.real(x), n, ctx).difference);
  return {worst <= tol, "f in {1, e^-x, x}, x in {1,2}, n<=8: max discrepancy " + sci(worst) + " (bound " + sci(tol) + ")"};
}

Outcome decay_bound() {
  PrecisionContext ctx(20);
  DecayFit fit = decay_bound_probe(ctx.real("0.1"), 10, 40, ctx);
  return {fit.b > 1L && fit.rms_log_residual <= ctx.real("0.05"),
          "b = " + fit.b.to_string(6) + ", rms log residual = " + fit.rms_log_residual.to_string(3) + " (need b > 1, <= 0.05)"};
}

Outcome equivalence() {
  PrecisionContext ctx(30);
  const TransformPair& step = find_pair("step");
  HPReal prev;
  bool passed = true, first = true;
  std::ostringstream os;
  os << "|probe| at n=20,40,80:";
  for (int n : {20, 40, 80}) {
    HPReal value = abs(equivalence_probe(step.f_ref, ctx.real(1L), ctx.real("0.5"), ctx.real("0.2"), n, ctx));
    os << ' ' << sci(value);
    if (!first && value > prev) passed = false;
    prev = value;
    first = false;
  }
  passed = passed && prev <= ctx.eps();
  return {passed, os.str()};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> list{
      {"coefficient identities", coefficient_identities},
      {"constant exactness", constant_exactness},
      {"two-path agreement", two_path_agreement},
      {"smooth convergence", smooth_convergence},
      {"jump midpoint", jump_midpoint},
      {"generating function", generating_function},
      {"q_n(1) refinement", q_at_one_refinement},
      {"oscillatory asymptotics", oscillatory_asymptotics},
      {"Lambert W", lambert_w},
      {"integral representation", integral_representation},
      {"decay bound", decay_bound},
      {"equivalence probe", equivalence},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run one criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  bool all_passed = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && id != only) continue;
    const auto& [name, fn] = criteria()[i];
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_passed = all_passed && o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << o.detail << std::endl;
  }
  return all_passed ? 0 : 1;
}
