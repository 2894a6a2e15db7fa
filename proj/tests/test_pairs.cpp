#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "stehfest/pairs.hpp"

using namespace stehfest;

namespace {

void check_against_oracle(const InversionReport& r, const char* key) {
  const auto& oracle = testing::oracle()["ladders"][key];
  for (const LadderEntry& e : r.entries) {
    CAPTURE(key);
    CAPTURE(e.n);
    CHECK(e.abs_error->to_double() == doctest::Approx(testing::fixture_double(oracle[e.n - 1])).epsilon(1e-9));
  }
}

}  // namespace

TEST_CASE("corpus contents") {
  std::set<std::string> names;
  for (const TransformPair& p : corpus()) names.insert(p.name);
  CHECK(names == std::set<std::string>{"constant", "ramp", "exponential", "root_singular", "step", "square_wave", "sine"});
  CHECK(find_pair("sine").F.oscillatory);
  CHECK(find_pair("sine").cls == RegularityClass::oscillatory);
  CHECK(find_pair("step").cls == RegularityClass::bounded_variation_jump);
  CHECK(find_pair("square_wave").jumps.size() == kSquareWaveHorizon);
  for (const Jump& j : find_pair("square_wave").jumps) CHECK(j.jordan_target() == BigRational(1, 2));
  CHECK_THROWS_AS(find_pair("nope"), std::invalid_argument);
}

TEST_CASE("targets") {
  PrecisionContext ctx(20);
  CHECK(pair_target(find_pair("step"), ctx.real(1L), ctx) == ctx.real("0.5"));
  CHECK(pair_target(find_pair("step"), ctx.real(2L), ctx) == 1L);
  CHECK(abs(pair_target(find_pair("exponential"), ctx.real(1L), ctx) - exp(-ctx.real(1L))) <= ctx.eps());
  CHECK(pair_target(find_pair("ramp"), ctx.real(2L), ctx) == 2L);
  CHECK(pair_target(find_pair("square_wave"), ctx.real(3L), ctx) == ctx.real("0.5"));
  CHECK(pair_target(find_pair("square_wave"), ctx.real("2.5"), ctx) == 1L);
}

TEST_CASE("every pair satisfies the Laplace identity") {
  PrecisionContext ctx(20);
  for (const TransformPair& p : corpus()) {
    for (long z : {1L, 2L, 5L}) {
      CAPTURE(p.name);
      CAPTURE(z);
      HPReal zz = ctx.real(z);
      HPReal lhs = laplace_integral(p, zz, ctx);
      HPReal rhs = p.F.eval(zz, ctx);
      CHECK(abs(lhs - rhs) <= ctx.eps() * max(abs(rhs), ctx.real(1L)));
    }
  }
}

TEST_CASE("smooth originals are Lipschitz at interior points") {
  PrecisionContext ctx(20);
  for (const char* name : {"constant", "ramp", "exponential", "root_singular"}) {
    const TransformPair& p = find_pair(name);
    for (const char* x : {"0.5", "1", "2"}) {
      HPReal xx = ctx.real(x);
      HPReal fx = p.f_ref(xx, ctx);
      HPReal worst = ctx.zero();
      for (int j = 1; j <= 8; ++j) {
        HPReal v = ctx.pow10(-j) * 3L;
        worst = max(worst, abs(p.f_ref(xx + v, ctx) - fx) / v);
        worst = max(worst, abs(p.f_ref(xx - v, ctx) - fx) / v);
      }
      CHECK(worst < ctx.real(3L));
    }
  }
}

TEST_CASE("dini_integral_estimate") {
  PrecisionContext ctx(20);
  HPReal one = ctx.real(1L);
  HPReal eps = ctx.real("0.2");
  DiniEstimate constant = dini_integral_estimate(find_pair("constant"), one, one, eps, ctx);
  CHECK(constant.value.is_zero());
  CHECK_FALSE(constant.divergent);
  DiniEstimate smooth = dini_integral_estimate(find_pair("exponential"), one, exp(-one), eps, ctx);
  CHECK_FALSE(smooth.divergent);
  CHECK(abs(smooth.value - testing::fixture_real(testing::oracle()["dini_exp"], ctx)) <= ctx.pow10(-9));
  DiniEstimate wrong = dini_integral_estimate(find_pair("step"), one, ctx.zero(), eps, ctx);
  CHECK(wrong.divergent);
  CHECK(abs(wrong.value - log(eps / wrong.v_min)) <= ctx.pow10(-10));
  DiniEstimate midpoint = dini_integral_estimate(find_pair("step"), one, ctx.real("0.5"), eps, ctx);
  CHECK_FALSE(midpoint.divergent);
  CHECK_THROWS_AS(dini_integral_estimate(find_pair("step"), one, one, ctx.real("0.3"), ctx), std::domain_error);
}

TEST_CASE("run_pair ladders") {
  PrecisionContext ctx(15);
  SUBCASE("constant is exact") {
    InversionReport r = run_pair(find_pair("constant"), ctx.real(1L), 6, ctx);
    for (const LadderEntry& e : r.entries) CHECK(*e.abs_error <= ctx.pow10(-r.digits_used + ctx.guard()));
  }
  SUBCASE("step at the jump approaches the midpoint") {
    InversionReport r = run_pair(find_pair("step"), ctx.real(1L), 18, ctx);
    check_against_oracle(r, "step_x1");
    CHECK(*r.entries[17].abs_error < ctx.real("0.05"));
    CHECK(*r.entries[17].abs_error < *r.entries[5].abs_error);
  }
  SUBCASE("step at a continuity point") {
    InversionReport r = run_pair(find_pair("step"), ctx.real(2L), 18, ctx);
    check_against_oracle(r, "step_x2");
    HPReal early = ctx.zero();
    for (int i = 0; i < 6; ++i) early = max(early, *r.entries[i].abs_error);
    CHECK(*r.entries[17].abs_error < early);
    CHECK(*r.entries[17].abs_error < ctx.real("0.01"));
  }
  SUBCASE("smooth pairs decrease monotonically from n = 4") {
    for (auto [name, key, n_max] : {std::tuple{"exponential", "exponential_x1", 14}, {"root_singular", "root_x1", 14},
                                    {"ramp", "ramp_x1", 10}}) {
      InversionReport r = run_pair(find_pair(name), ctx.real(1L), n_max, ctx);
      check_against_oracle(r, key);
      for (int n = 5; n <= n_max; ++n) CHECK(*r.entries[n - 1].abs_error < *r.entries[n - 2].abs_error);
    }
  }
  SUBCASE("oscillatory pairs are flagged") {
    InversionReport r = run_pair(find_pair("sine"), ctx.real(1L), 8, ctx);
    CHECK(r.oscillatory);
    CHECK(to_json(r)["oscillatory"] == true);
  }
}

TEST_CASE("localization: a bump away from x fades from the ladder") {
  // originals of F and F + bump agree near x = 1/2, so the ladders differ by f_n[bump](1/2)
  PrecisionContext ctx(15);
  TransformPair bump = bump_pair(2, 3);
  InversionReport base = run_pair(find_pair("exponential"), ctx.real("0.5"), 18, ctx);
  TransformFn shifted{[&bump](const HPReal& z, const PrecisionContext& c) {
                        return 1L / (z + 1L) + bump.F.eval(z, c);
                      },
                      "exponential+bump"};
  InversionReport moved = invert_ladder(shifted, ctx.real("0.5"), 18, std::nullopt, ctx);
  const auto& oracle = testing::oracle()["ladders"]["bump_x0.5"];
  std::vector<HPReal> diffs;
  for (int i = 0; i < 18; ++i) {
    HPReal d = abs(moved.entries[i].value - base.entries[i].value);
    CHECK(d.to_double() == doctest::Approx(testing::fixture_double(oracle[i])).epsilon(1e-8));
    diffs.push_back(d);
  }
  for (int i = 4; i < 18; ++i) CHECK(diffs[i] < diffs[i - 2]);
  CHECK(max(diffs[16], diffs[17]) < ctx.real("1e-4"));
}

TEST_CASE("manifest") {
  nlohmann::ordered_json m = corpus_manifest();
  CHECK(m.size() == corpus().size());
  CHECK(m[0].begin().key() == "name");
  bool found = false;
  for (const auto& e : m) {
    if (e["name"] == "step") {
      found = true;
      CHECK(e["jumps"][0]["target"] == "1/2");
      CHECK(e["class"] == "bounded-variation-jump");
    }
  }
  CHECK(found);
}
