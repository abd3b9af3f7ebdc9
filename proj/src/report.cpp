#include "qic/report.hpp"

#include <cmath>
#include <fmt/format.h>

namespace qic {

nlohmann::json build_report(const SuiteConfig& cfg, const std::vector<SuiteResult>& results) {
  nlohmann::json config{{"suite", cfg.suite},
                        {"seed", cfg.seed},
                        {"trials", cfg.trials ? nlohmann::json(*cfg.trials) : nlohmann::json()},
                        {"dims", {cfg.dim_lo, cfg.dim_hi}},
                        {"m", cfg.m},
                        {"n", cfg.n ? nlohmann::json(*cfg.n) : nlohmann::json()},
                        {"tol", cfg.tol ? nlohmann::json(*cfg.tol) : nlohmann::json()}};
  nlohmann::json checks = nlohmann::json::array();
  std::size_t violations = 0;
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      checks.push_back({{"name", r.suite + "." + c.name},
                        {"trials", c.trials},
                        {"min_slack", c.min_slack},
                        {"violations", c.violations},
                        {"details", c.details}});
      violations += c.violations;
    }
  }
  return {{"schema", 1}, {"suite", cfg.suite}, {"config", config}, {"checks", checks}, {"violations", violations}};
}

namespace {

void dump_into(const nlohmann::json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt::format("{:.17g}", v) : "null";
      return;
    }
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(k).dump() + ": ";
        dump_into(v, out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_into(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_canonical(const nlohmann::json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

std::string text_summary(const std::vector<SuiteResult>& results) {
  std::string out;
  std::size_t total = 0;
  for (const auto& r : results) {
    out += fmt::format("[{}] {} checks, {} violations\n", r.suite, r.checks.size(), r.violations());
    for (const auto& c : r.checks) {
      out += fmt::format("  {:<28} trials={:<5} min_slack={:<+12.4e} violations={}{}\n", c.name, c.trials, c.min_slack,
                         c.violations, c.violations ? "  <-- VIOLATED" : "");
    }
    for (const auto& n : r.notes) out += "  * " + n + "\n";
    total += r.violations();
  }
  out += fmt::format("total violations: {}\n", total);
  return out;
}

}  // namespace qic
