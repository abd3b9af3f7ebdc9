// Runs the seven acceptance criteria and prints one PASS/FAIL line each.
// Usage: acceptance <path-to-qic-cli>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "qic/suites.hpp"

namespace fs = std::filesystem;

namespace {

struct Requirement {
  std::string check;
  std::size_t min_trials = 1;
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> reasons;

  void fail(std::string why) {
    pass = false;
    reasons.push_back(std::move(why));
  }
};

Outcome require_checks(const qic::SuiteResult& r, const std::vector<Requirement>& reqs) {
  Outcome o;
  std::map<std::string, const qic::Check*> by_name;
  for (const auto& c : r.checks) by_name[c.name] = &c;
  for (const auto& req : reqs) {
    auto it = by_name.find(req.check);
    if (it == by_name.end()) {
      o.fail(req.check + " missing");
      continue;
    }
    const qic::Check& c = *it->second;
    if (c.trials < req.min_trials) o.fail(fmt::format("{} ran {} < {} trials", c.name, c.trials, req.min_trials));
    if (c.violations > 0) {
      o.fail(fmt::format("{}: {}/{} violations, min slack {:.4g} (tol {:.0e})", c.name, c.violations, c.trials,
                         c.min_slack, c.tol));
    }
  }
  return o;
}

void print(int idx, const std::string& title, const Outcome& o, const std::string& summary) {
  fmt::print("criterion {}: {} {}", idx, o.pass ? "PASS" : "FAIL", title);
  if (!summary.empty()) fmt::print(" [{}]", summary);
  fmt::print("\n");
  for (const auto& why : o.reasons) fmt::print("    {}\n", why);
  std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const qic::Check* find(const qic::SuiteResult& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <qic-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];
  qic::SuiteConfig cfg;
  cfg.seed = 1;
  int failed = 0;
  auto tally = [&](const Outcome& o) { failed += o.pass ? 0 : 1; };

  try {
    {
      const auto r = qic::run_metrics_suite(cfg);
      const Outcome o = require_checks(r, {{"fvg_lower", 1000},
                                           {"fvg_upper", 1000},
                                           {"optimal_measurement_tight", 1000},
                                           {"pure_distance_agreement", 1000}});
      print(1, "metrics: trace distance vs fidelity bounds, optimal measurement", o,
            fmt::format("{} density pairs", find(r, "fvg_lower") ? find(r, "fvg_lower")->trials : 0));
      tally(o);
    }
    {
      const auto r = qic::run_info_suite(cfg);
      const Outcome o = require_checks(r, {{"holevo_dominance", 500},
                                           {"block_entropy_identity", 1},
                                           {"chain_identity", 1},
                                           {"monotonicity_classical_x", 1},
                                           {"binary_entropy_gap", 2}});
      print(2, "info: Holevo dominance, block entropy, chain rule, monotonicity, binary entropy gap", o, "");
      tally(o);
    }
    {
      const auto r = qic::run_transition_suite(cfg);
      const Outcome o = require_checks(
          r, {{"overlap_matches_fidelity", 1000}, {"distance_le_bound", 1000}, {"exact_transition", 1}});
      print(3, "transition: alignment overlap, distance bound, exact local transition", o, "");
      tally(o);
    }
    {
      const auto r = qic::run_encoding_suite(cfg);
      const Outcome o = require_checks(r, {{"mean_le_pairwise", 200},
                                           {"pairwise_le_sqrt_info", 200},
                                           {"info_ge_avgdist", 1},
                                           {"pairing_ge_delta", 200},
                                           {"pairing_le_exhaustive_m3", 1},
                                           {"exhaustive_ge_delta_m3", 1},
                                           {"info_decomposition", 200}});
      std::string summary;
      if (const auto* c = find(r, "info_ge_half_avgdist")) {
        summary = fmt::format("halved-distance form I >= 1 - H(1/2 + D/4): {}/{} violations", c->violations, c->trials);
      }
      print(4, "encoding: distance/information bounds, pairing, decomposition", o, summary);
      tally(o);
    }
    {
      const auto r = qic::run_rac_suite(cfg);
      const Outcome o = require_checks(r, {{"rac_success_n2", 1},
                                           {"lemma_k1_rac_n2", 1},
                                           {"lemma_k1_rac_n3", 1},
                                           {"lemma_k1_copy_n2", 1},
                                           {"lemma_k1_copy_n3", 1}});
      std::string summary;
      if (const auto* c = find(r, "rac_success_n2")) {
        summary = fmt::format("n=2 success {:.6f}", c->details.value("success", 0.0));
      }
      print(5, "rac: optimized 2->1 code and the single-round bound", o, summary);
      tally(o);
    }
    {
      const auto r = qic::run_reduction_suite(cfg);
      const Outcome o = require_checks(r, {{"mu_prime_zero", 3},
                                           {"delta_le_chain", 3},
                                           {"delta_le_info", 3},
                                           {"drop_tv", 3},
                                           {"drop_rounds", 3},
                                           {"drop_qubits", 3},
                                           {"info_budget", 3}});
      print(6, "reduction: first-message modification and drop", o,
            fmt::format("{} instances", find(r, "drop_tv") ? find(r, "drop_tv")->trials : 0));
      tally(o);
    }
  } catch (const std::exception& e) {
    fmt::print("error: {}\n", e.what());
    return 3;
  }

  {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("qic_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::vector<std::string> bodies;
    for (const char* tag : {"a", "b"}) {
      const fs::path out = dir / (std::string(tag) + ".json");
      const std::string cmd = cli + " --suite all --seed 1 --out " + out.string() + " > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      if (code != 0 && code != 1) o.fail(fmt::format("cli exited with {}", code));
      bodies.push_back(slurp(out));
    }
    if (bodies[0].empty()) o.fail("no report written");
    if (bodies[0] != bodies[1]) o.fail("reports differ");
    print(7, "determinism: repeated --suite all runs give identical reports", o,
          fmt::format("{} bytes", bodies[0].size()));
    tally(o);
    fs::remove_all(dir);
  }

  fmt::print("{} of 7 criteria passed\n", 7 - failed);
  return failed == 0 ? 0 : 1;
}
