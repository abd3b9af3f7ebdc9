#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qic/suites.hpp"

namespace qic {

// {"schema": 1, "suite", "config", "checks": [...]}; check names carry their
// suite as a prefix. No timestamps, so equal inputs give equal bytes.
nlohmann::json build_report(const SuiteConfig& cfg, const std::vector<SuiteResult>& results);

// Pretty JSON with sorted keys and every float written with 17 significant
// digits; non-finite numbers become null.
std::string dump_canonical(const nlohmann::json& j);

std::string text_summary(const std::vector<SuiteResult>& results);

}  // namespace qic
