#pragma once

// Closed-form Laplace transform pairs used to exercise the inverter.

#include <string>
#include <vector>

#include "json.hpp"
#include "stehfest/inverter.hpp"
#include "stehfest/rational.hpp"

namespace stehfest {

enum class RegularityClass { smooth, dini, bounded_variation_jump, oscillatory };

std::string to_string(RegularityClass cls);

struct Jump {
  BigRational location;
  BigRational left;   // f(location - 0)
  BigRational right;  // f(location + 0)
  BigRational jordan_target() const { return (left + right) / 2; }
};

struct TransformPair {
  std::string name;
  TransformFn F;
  OriginalFn f_ref;
  RegularityClass cls = RegularityClass::smooth;
  std::vector<Jump> jumps;  // ascending locations
  std::string transform_formula;
  std::string original_formula;
};

inline constexpr int kSquareWaveHorizon = 64;

/// constant, ramp, exponential, root_singular, step, square_wave, sine.
const std::vector<TransformPair>& corpus();

/// Throws std::invalid_argument for an unknown name.
const TransformPair& find_pair(const std::string& name);

/// The indicator of [a, b): (e^-az - e^-bz)/z, jumps at a and b.
TransformPair bump_pair(const BigRational& a, const BigRational& b);

/// Jump located at x (within tolerance), if any.
const Jump* jump_at(const TransformPair& pair, const HPReal& x, const PrecisionContext& ctx);

/// Jordan midpoint when x is a jump, f_ref(x) otherwise.
HPReal pair_target(const TransformPair& pair, const HPReal& x, const PrecisionContext& ctx);

struct DiniEstimate {
  HPReal value;      // int_{v_min}^{eps} |bracket(v)| / v dv
  HPReal increment;  // the same integral over [v_min/10, v_min]
  HPReal v_min;
  bool divergent = false;
};

/// bracket(v) = f(-x log2(1/2+v)) + f(-x log2(1/2-v)) - 2c, 0 < eps < 1/4.
/// The 1/v endpoint is cut at v_min = 10^(-digits/2) and integrated in
/// s = ln v; divergence is flagged when shrinking v_min tenfold adds more
/// than ln(10) 10^(-digits/4).
DiniEstimate dini_integral_estimate(const TransformPair& pair, const HPReal& x, const HPReal& c, const HPReal& eps,
                                    const PrecisionContext& ctx);

/// Ladder for the pair with errors against pair_target.
InversionReport run_pair(const TransformPair& pair, const HPReal& x, int n_max, const PrecisionContext& ctx,
                         const LadderOptions& options = {});

/// int_0^inf e^-zx f_ref(x) dx, split at the recorded jumps.
HPReal laplace_integral(const TransformPair& pair, const HPReal& z, const PrecisionContext& ctx);

nlohmann::ordered_json corpus_manifest();

}  // namespace stehfest
