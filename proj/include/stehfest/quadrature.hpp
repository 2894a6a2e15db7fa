#pragma once

// Tanh-sinh (double-exponential) quadrature at arbitrary precision.
//
// Refinement halves the step until two successive levels agree to
// 10^-digits (relative to max(1, |I|)); at each level the node window grows
// until the weighted terms fall below the working precision. Integrands may
// be singular at either endpoint, the rule never samples the endpoints.
// Semi-infinite ranges use u = a - ln(1 - s), s in [0, 1).

#include <functional>
#include <stdexcept>

#include "stehfest/hpreal.hpp"
#include "stehfest/precision.hpp"

namespace stehfest {

using RealFunction = std::function<HPReal(const HPReal&)>;

struct Infinity {};
inline constexpr Infinity kInfinity{};

struct QuadratureOptions {
  int min_level = 3;
  int max_level = 12;
};

struct QuadratureResult {
  HPReal value;
  /// |I_m - I_{m-1}| at the accepted level.
  HPReal last_difference;
  int levels = 0;
  long evaluations = 0;
};

/// Raised when the refinement ladder exhausts max_level without two
/// successive levels agreeing.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, HPReal last, HPReal previous)
      : std::runtime_error(what), last_(std::move(last)), previous_(std::move(previous)) {}
  const HPReal& last_estimate() const { return last_; }
  const HPReal& previous_estimate() const { return previous_; }

 private:
  HPReal last_;
  HPReal previous_;
};

QuadratureResult integrate_detailed(const RealFunction& f, const HPReal& a, const HPReal& b,
                                    const PrecisionContext& ctx, QuadratureOptions options = {});
QuadratureResult integrate_detailed(const RealFunction& f, const HPReal& a, Infinity,
                                    const PrecisionContext& ctx, QuadratureOptions options = {});

/// Integral of f over (a, b).
HPReal integrate(const RealFunction& f, const HPReal& a, const HPReal& b,
                 const PrecisionContext& ctx, QuadratureOptions options = {});
/// Integral of f over (a, +infinity); f must decay at least exponentially.
HPReal integrate(const RealFunction& f, const HPReal& a, Infinity, const PrecisionContext& ctx,
                 QuadratureOptions options = {});

}  // namespace stehfest
