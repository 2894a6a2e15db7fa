#pragma once

// Gaver functionals and Gaver-Stehfest approximants f_n(x) of an original
// f from its Laplace transform F.
//
//   f~_k(x) = ln2/x (2k)!/(k!(k-1)!) sum_{i=0}^{k} C(k,i) (-1)^i F((k+i) ln2/x)
//   f_n(x)  = ln2/x sum_{k=1}^{2n} a_k(n) F(k ln2/x) = sum_{k=1}^{n} c_k(n) f~_k(x)

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stehfest/precision.hpp"

namespace stehfest {

/// F(z) for real z > 0 at the precision of `ctx`.
struct TransformFn {
  std::function<HPReal(const HPReal& z, const PrecisionContext& ctx)> eval;
  std::string label;
  bool oscillatory = false;
};

/// A real function of one variable at the precision of `ctx` (originals f, references).
using OriginalFn = std::function<HPReal(const HPReal& x, const PrecisionContext& ctx)>;

class TransformEvaluationError : public std::runtime_error {
 public:
  TransformEvaluationError(const std::string& what, HPReal z) : std::runtime_error(what), z_(std::move(z)) {}
  const HPReal& z() const { return z_; }

 private:
  HPReal z_;
};

/// Evaluates F(z), rethrowing any failure (or a non-finite value) as
/// TransformEvaluationError carrying z.
HPReal evaluate_transform(const TransformFn& F, const HPReal& z, const PrecisionContext& ctx);

enum class PrecisionPolicy { enforce, allow_low };

/// k-th Gaver functional. Requires x > 0 and ctx.digits() >= required_digits(k)
/// unless the policy says otherwise (std::invalid_argument).
HPReal gaver_approx(const TransformFn& F, const HPReal& x, int k, const PrecisionContext& ctx,
                    PrecisionPolicy policy = PrecisionPolicy::enforce);

/// f_n(x) through the collapsed coefficients a_k(n).
HPReal stehfest_approx(const TransformFn& F, const HPReal& x, int n, const PrecisionContext& ctx,
                       PrecisionPolicy policy = PrecisionPolicy::enforce);

/// f_n(x) as sum_k c_k(n) f~_k(x), sharing transform values across the
/// functionals through a per-call abscissa cache.
HPReal stehfest_approx_via_gaver(const TransformFn& F, const HPReal& x, int n, const PrecisionContext& ctx,
                                 PrecisionPolicy policy = PrecisionPolicy::enforce);

struct LadderEntry {
  int n = 0;
  HPReal value;
  std::optional<HPReal> abs_error;
};

struct InversionReport {
  std::string label;
  HPReal x;
  std::optional<HPReal> reference;
  std::vector<LadderEntry> entries;  // ascending n
  int digits_used = 0;
  bool oscillatory = false;
};

struct LadderOptions {
  /// Run at ctx.digits() even when it is below required_digits(n_max).
  bool allow_low_precision = false;
  int n_min = 1;
};

/// f_n(x) for n = n_min .. n_max at max(ctx.digits(), required_digits(n_max))
/// digits. `ref`, when given, supplies the target compared against.
InversionReport invert_ladder(const TransformFn& F, const HPReal& x, int n_max, const std::optional<OriginalFn>& ref,
                              const PrecisionContext& ctx, const LadderOptions& options = {});

/// Numbers are decimal strings with digits_used significant digits.
nlohmann::ordered_json to_json(const InversionReport& report);
/// Columns n,value,abs_error,digits; abs_error empty when no reference.
std::string to_csv(const InversionReport& report);

class ExpansionFitError : public std::runtime_error {
 public:
  ExpansionFitError(const std::string& what, HPReal residual)
      : std::runtime_error(what), residual_(std::move(residual)) {}
  const HPReal& residual() const { return residual_; }

 private:
  HPReal residual_;
};

struct KRange {
  int first = 8;
  int last = 32;
  int step = 1;
};

/// Least-squares fit of k (f~_k(x) - f(x)) = b1 + b2/k + b3/k^2 over the
/// k range; returns b1, the leading 1/k coefficient. The fit must reproduce
/// the data to `tolerance` (relative to max(1, |b1|)), else ExpansionFitError.
HPReal expansion_probe(const TransformFn& F, const HPReal& x, const HPReal& f_ref, const KRange& k_range,
                       const PrecisionContext& ctx, const HPReal& tolerance);
HPReal expansion_probe(const TransformFn& F, const HPReal& x, const HPReal& f_ref, const KRange& k_range,
                       const PrecisionContext& ctx);

/// int_0^eps |xi(v)|^-n sin(n alpha(v))/alpha(v)
///     [f(-x log2(1/2+v)) + f(-x log2(1/2-v)) - 2c] dv,   0 < eps < 1/4.
HPReal equivalence_probe(const OriginalFn& f, const HPReal& x, const HPReal& c, const HPReal& eps, int n,
                         const PrecisionContext& ctx);

}  // namespace stehfest
