#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "stehfest/coeffs.hpp"
#include "stehfest/inverter.hpp"

using namespace stehfest;

namespace {

TransformFn constant_over_z(BigRational c) {
  return {[c](const HPReal& z, const PrecisionContext& ctx) { return ctx.real(c) / z; }, "c/z"};
}
TransformFn inv_square() {
  return {[](const HPReal& z, const PrecisionContext&) { return 1L / (z * z); }, "1/z^2"};
}
TransformFn shifted_pole() {
  return {[](const HPReal& z, const PrecisionContext&) { return 1L / (z + 1L); }, "1/(z+1)"};
}
TransformFn delayed_step() {
  return {[](const HPReal& z, const PrecisionContext&) { return exp(-z) / z; }, "e^-z/z"};
}
OriginalFn exp_ref() {
  return [](const HPReal& x, const PrecisionContext&) { return exp(-x); };
}
OriginalFn ramp_ref() {
  return [](const HPReal& x, const PrecisionContext&) { return x; };
}

}  // namespace

TEST_CASE("gaver_approx examples") {
  PrecisionContext ctx(50);
  HPReal one = ctx.real(1L);
  CHECK(abs(gaver_approx(constant_over_z(1), one, 1, ctx) - 1L) <= ctx.eps());
  HPReal g1 = gaver_approx(inv_square(), one, 1, ctx);
  CHECK(abs(g1 - ctx.real("1.5") / ctx.ln2()) <= ctx.eps());
  CHECK(g1.to_double() == doctest::Approx(2.16404).epsilon(1e-5));
  HPReal prev = ctx.real(10L);
  for (int k = 4; k <= 16; ++k) {
    HPReal err = abs(gaver_approx(inv_square(), one, k, ctx) - 1L);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("stehfest_approx examples") {
  PrecisionContext ctx41(41);
  HPReal one = ctx41.real(1L);
  CHECK(abs(stehfest_approx(constant_over_z(1), ctx41.real("2.5"), 7, ctx41) - 1L) <= ctx41.eps());
  HPReal f14 = stehfest_approx(shifted_pole(), one, 14, ctx41);
  CHECK(abs(f14 - exp(-one)) <= ctx41.real("1e-6"));
  HPReal oracle14 = testing::fixture_real(testing::oracle()["ladders"]["exponential_x1_values"][1], ctx41);
  CHECK(abs(f14 - oracle14) <= ctx41.pow10(-25));
  PrecisionContext ctx50(50);
  HPReal mid = stehfest_approx(delayed_step(), ctx50.real(1L), 18, ctx50);
  CHECK(abs(mid - ctx50.real("0.5")) < ctx50.real("0.05"));
}

TEST_CASE("precision policy and argument checks") {
  PrecisionContext ctx(20);
  HPReal one = ctx.real(1L);
  CHECK_THROWS_AS(stehfest_approx(shifted_pole(), one, 10, ctx), std::invalid_argument);
  CHECK_NOTHROW(stehfest_approx(shifted_pole(), one, 10, ctx, PrecisionPolicy::allow_low));
  CHECK_THROWS_AS(stehfest_approx(shifted_pole(), -one, 2, ctx), std::domain_error);
  CHECK_THROWS_AS(gaver_approx(shifted_pole(), one, 0, ctx), std::out_of_range);
}

TEST_CASE("transform failures carry the abscissa") {
  PrecisionContext ctx(30);
  TransformFn bad{[](const HPReal& z, const PrecisionContext&) -> HPReal {
                    if (z > 2L) throw std::runtime_error("outside table");
                    return 1L / z;
                  },
                  "bad"};
  try {
    stehfest_approx(bad, ctx.real(1L), 3, ctx);
    FAIL("expected TransformEvaluationError");
  } catch (const TransformEvaluationError& err) {
    CHECK(err.z() > 2L);
    CHECK(abs(err.z() - ctx.ln2() * 3L) <= ctx.eps());  // first abscissa beyond 2 is 3 ln2
  }
  TransformFn nan_fn{[](const HPReal& z, const PrecisionContext&) { return log(-z); }, "nan"};
  CHECK_THROWS_AS(stehfest_approx(nan_fn, ctx.real(1L), 2, ctx), TransformEvaluationError);
}

TEST_CASE("constant exactness (property)") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 17), order(1, 12);
  std::uniform_real_distribution<double> xs(0.05, 20.0);
  for (int trial = 0; trial < 40; ++trial) {
    BigRational c(num(rng), den(rng));
    c.canonicalize();
    int n = order(rng);
    PrecisionContext ctx(auto_digits(n));
    HPReal x = ctx.real(xs(rng));
    HPReal value = stehfest_approx(constant_over_z(c), x, n, ctx);
    CHECK(abs(value - ctx.real(c)) <= ctx.pow10(-ctx.digits() + ctx.guard()));
  }
}

TEST_CASE("two evaluation paths agree (property)") {
  const std::vector<TransformFn> transforms = {constant_over_z(BigRational(-3)), inv_square(), shifted_pole(),
                                               delayed_step()};
  for (const TransformFn& F : transforms) {
    for (int n = 1; n <= 10; ++n) {
      PrecisionContext ctx(auto_digits(n));
      for (const char* x : {"0.5", "1", "2"}) {
        CAPTURE(F.label);
        CAPTURE(n);
        HPReal a = stehfest_approx(F, ctx.real(x), n, ctx);
        HPReal b = stehfest_approx_via_gaver(F, ctx.real(x), n, ctx);
        CHECK(abs(a - b) <= ctx.pow10(-ctx.digits() + ctx.guard() + 2));
      }
    }
  }
}

TEST_CASE("scale covariance: F(az)/a at x matches F at x/a divided by a^2") {
  PrecisionContext ctx(40);
  for (long a : {2L, 3L}) {
    TransformFn scaled{[a](const HPReal& z, const PrecisionContext&) { return 1L / (z * a + 1L) / a; }, "scaled"};
    for (const char* x : {"0.5", "1", "3"}) {
      HPReal lhs = stehfest_approx(scaled, ctx.real(x), 10, ctx);
      HPReal rhs = stehfest_approx(shifted_pole(), ctx.real(x) / a, 10, ctx) / (a * a);
      CHECK(abs(lhs - rhs) <= ctx.pow10(-ctx.digits() + ctx.guard()));
    }
  }
}

TEST_CASE("invert_ladder") {
  PrecisionContext ctx(15);
  SUBCASE("constant is exact at every order") {
    InversionReport r = invert_ladder(constant_over_z(1), ctx.real(1L), 5, OriginalFn([](const HPReal& x, const PrecisionContext&) { return HPReal(1L, x.precision()); }), ctx);
    REQUIRE(r.entries.size() == 5);
    CHECK(r.digits_used >= required_digits(5));
    for (const LadderEntry& e : r.entries) CHECK(*e.abs_error <= ctx.pow10(-r.digits_used + ctx.guard()));
  }
  SUBCASE("exponential ladder matches the oracle") {
    InversionReport r = invert_ladder(shifted_pole(), ctx.real(1L), 14, exp_ref(), ctx);
    CHECK(r.digits_used == 41);
    const auto& oracle = testing::oracle()["ladders"]["exponential_x1"];
    for (const LadderEntry& e : r.entries) {
      CAPTURE(e.n);
      CHECK(e.abs_error->to_double() == doctest::Approx(testing::fixture_double(oracle[e.n - 1])).epsilon(1e-9));
      if (e.n >= 5) CHECK(*e.abs_error < *r.entries[e.n - 2].abs_error);
    }
    CHECK(*r.entries[13].abs_error * 10000L <= *r.entries[3].abs_error);
  }
  SUBCASE("ramp errors decrease from n = 2") {
    InversionReport r = invert_ladder(inv_square(), ctx.real(1L), 10, ramp_ref(), ctx);
    const auto& oracle = testing::oracle()["ladders"]["ramp_x1"];
    for (const LadderEntry& e : r.entries) {
      CHECK(e.abs_error->to_double() == doctest::Approx(testing::fixture_double(oracle[e.n - 1])).epsilon(1e-9));
      if (e.n >= 2) CHECK(*e.abs_error < *r.entries[e.n - 2].abs_error);
    }
  }
  SUBCASE("options") {
    LadderOptions low;
    low.allow_low_precision = true;
    low.n_min = 3;
    InversionReport r = invert_ladder(shifted_pole(), ctx.real(1L), 6, std::nullopt, ctx, low);
    CHECK(r.digits_used == 15);
    CHECK(r.entries.front().n == 3);
    CHECK_FALSE(r.entries.front().abs_error.has_value());
    CHECK_THROWS_AS(invert_ladder(shifted_pole(), ctx.real(1L), 0, std::nullopt, ctx), std::out_of_range);
  }
}

TEST_CASE("report serialization is deterministic") {
  PrecisionContext ctx(15);
  InversionReport a = invert_ladder(shifted_pole(), ctx.real(1L), 4, exp_ref(), ctx);
  InversionReport b = invert_ladder(shifted_pole(), ctx.real(1L), 4, exp_ref(), ctx);
  CHECK(to_json(a).dump() == to_json(b).dump());
  nlohmann::ordered_json j = to_json(a);
  CHECK(j["entries"].size() == 4);
  CHECK(j["entries"][0]["value"].is_string());
  CHECK(j.begin().key() == "label");
  std::string csv = to_csv(a);
  CHECK(csv.rfind("n,value,abs_error,digits\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("expansion_probe") {
  PrecisionContext ctx(30);
  HPReal one = ctx.real(1L);
  CHECK(expansion_probe(constant_over_z(1), one, one, {8, 32}, ctx).is_zero());
  SUBCASE("ramp: leading coefficient is stable across windows") {
    HPReal b1 = expansion_probe(inv_square(), one, one, {8, 32}, ctx);
    HPReal b2 = expansion_probe(inv_square(), one, one, {10, 34}, ctx);
    CHECK(abs(b1 / b2 - 1L) < ctx.real("0.005"));
    // k (E[U_k]/ln2 - 1) -> 3/(4 ln2)
    CHECK(abs(b1 - ctx.real("0.75") / ctx.ln2()) < ctx.real("0.01"));
  }
  SUBCASE("exponential") {
    HPReal target = exp(-one);
    HPReal b1 = expansion_probe(shifted_pole(), one, target, {8, 32}, ctx);
    HPReal b2 = expansion_probe(shifted_pole(), one, target, {12, 36}, ctx);
    CHECK(abs(b1 / b2 - 1L) < ctx.real("0.005"));
    HPReal ln2 = ctx.ln2();
    HPReal expected = target * (ctx.real("-0.75") / ln2 + ctx.real("0.25") / (ln2 * ln2));
    CHECK(abs(b1 - expected) < ctx.real("0.005"));
  }
  CHECK_THROWS_AS(expansion_probe(inv_square(), one, one, {8, 10}, ctx), std::invalid_argument);
  // a wrong reference leaves an O(k) term the three-term model cannot absorb
  CHECK_THROWS_AS(expansion_probe(inv_square(), one, ctx.real("1.01"), {8, 32}, ctx), ExpansionFitError);
}

TEST_CASE("equivalence_probe") {
  PrecisionContext ctx(30);
  HPReal one = ctx.real(1L);
  HPReal eps = ctx.real("0.2");
  OriginalFn constant = [](const HPReal& x, const PrecisionContext&) { return HPReal(7L, x.precision()); };
  for (int n : {1, 20, 80}) CHECK(equivalence_probe(constant, one, ctx.real(7L), eps, n, ctx).is_zero());
  OriginalFn step = [](const HPReal& x, const PrecisionContext&) { return HPReal(x >= 1L ? 1L : 0L, x.precision()); };
  for (int n : {20, 40, 80}) CHECK(abs(equivalence_probe(step, one, ctx.real("0.5"), eps, n, ctx)) <= ctx.eps());
  HPReal prev = ctx.real(1L);
  for (const char* n : {"20", "40", "80"}) {
    HPReal value = equivalence_probe(exp_ref(), one, exp(-one), eps, std::stoi(n), ctx);
    HPReal oracle = testing::fixture_real(testing::oracle()["equivalence_exp"][n], ctx);
    CHECK(abs(value - oracle) <= ctx.pow10(-20));
    CHECK(abs(value) < prev);
    prev = abs(value);
  }
  CHECK_THROWS_AS(equivalence_probe(step, one, one, ctx.real("0.3"), 10, ctx), std::domain_error);
}
