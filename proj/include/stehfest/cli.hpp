#pragma once

// Command-line front end: coeffs, invert, ladder, corpus, verify, weval.
//
// Exit codes: 0 success, 1 a verification check failed (or the run itself
// failed), 2 usage error.

#include <iosfwd>
#include <string>

#include "stehfest/pairs.hpp"

namespace stehfest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// "p/q", an integer, or a decimal with optional exponent, converted exactly.
BigRational parse_exact_decimal(const std::string& text);

/// Built-in transforms: constant:c, inv-power:k, shifted-exp:a, delayed-step:a.
/// Throws std::invalid_argument for anything else.
TransformPair parse_transform_selector(const std::string& selector);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stehfest
