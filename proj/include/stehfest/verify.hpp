#pragma once

// Verification suites reported as {check, status, metrics, grid}.

#include <string>
#include <vector>

#include "json.hpp"

namespace stehfest {

struct CheckResult {
  std::string check;
  bool passed = false;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  nlohmann::ordered_json grid = nlohmann::ordered_json::object();
};

/// vandermonde, genfun, lambertw, qn-asymptotics, integral-rep, decay-bound, corpus.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
CheckResult run_suite(const std::string& name);

/// Runs the suites concurrently; results keep the order of `names`.
std::vector<CheckResult> run_suites(const std::vector<std::string>& names);

nlohmann::ordered_json to_json(const CheckResult& result);

}  // namespace stehfest
