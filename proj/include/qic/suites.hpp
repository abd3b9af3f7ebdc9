#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qic {

struct SuiteConfig {
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;  // default depends on the suite
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 8;
  std::size_t m = 5;                  // largest label width in the encoding sweep
  std::optional<std::size_t> n;       // rac: only this n
  std::optional<double> tol;          // overrides every per-check tolerance
};

inline const std::vector<std::string> kSuiteNames{"metrics", "info", "transition", "encoding", "rac", "reduction"};

// Throws RangeError on an unknown suite or out-of-range settings.
void validate(const SuiteConfig& cfg);

// One inequality checked over many instances; slack is rhs - lhs, and an
// instance violates the check when slack < -tol.
struct Check {
  std::string name;
  double tol = 0.0;
  std::size_t trials = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::size_t worst_trial = 0;
  nlohmann::json details = nlohmann::json::object();

  void add(double slack);
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // human-readable highlights
  std::size_t violations() const;
};

SuiteResult run_metrics_suite(const SuiteConfig& cfg);
SuiteResult run_info_suite(const SuiteConfig& cfg);
SuiteResult run_transition_suite(const SuiteConfig& cfg);
SuiteResult run_encoding_suite(const SuiteConfig& cfg);
SuiteResult run_rac_suite(const SuiteConfig& cfg);
SuiteResult run_reduction_suite(const SuiteConfig& cfg);

// The named suite, or every suite in kSuiteNames order for "all".
std::vector<SuiteResult> run_suites(const SuiteConfig& cfg);

}  // namespace qic
