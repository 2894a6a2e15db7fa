#pragma once

// Loads the frozen oracle values (tests/fixtures/oracle.json) produced by
// tests/oracle/generate_fixtures.py.

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "stehfest/precision.hpp"

namespace stehfest::testing {

inline const nlohmann::json& oracle() {
  static const nlohmann::json data = [] {
    std::ifstream in(std::string(STEHFEST_FIXTURE_DIR) + "/oracle.json");
    if (!in) throw std::runtime_error("cannot open oracle fixture");
    return nlohmann::json::parse(in);
  }();
  return data;
}

inline HPReal fixture_real(const nlohmann::json& node, const PrecisionContext& ctx) {
  return ctx.real(node.get<std::string>());
}

inline double fixture_double(const nlohmann::json& node) { return std::stod(node.get<std::string>()); }

}  // namespace stehfest::testing
