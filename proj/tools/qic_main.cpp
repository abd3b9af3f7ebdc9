#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

#include "qic/errors.hpp"
#include "qic/report.hpp"

namespace {

// "lo-hi" or a single value.
bool parse_dims(const std::string& s, std::size_t& lo, std::size_t& hi) {
  static const std::regex re(R"(^\s*(\d+)\s*(?:-\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return false;
  lo = std::stoul(m[1]);
  hi = m[2].matched ? std::stoul(m[2]) : lo;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized checks of quantum information inequalities and the round-reduction pipeline"};
  qic::SuiteConfig cfg;
  std::string dims = "2-8";
  std::string out_path;
  std::string format = "text";
  std::size_t trials = 0, n = 0;
  double tol = 0.0;

  std::vector<std::string> suites = qic::kSuiteNames;
  suites.push_back("all");
  app.add_option("--suite", cfg.suite, "Suite to run")->check(CLI::IsMember(suites));
  app.add_option("--seed", cfg.seed, "Base seed");
  auto* trials_opt = app.add_option("--trials", trials, "Random instances per sweep")->check(CLI::PositiveNumber);
  app.add_option("--dims", dims, "Dimension range, e.g. 2-8");
  app.add_option("--m", cfg.m, "Largest label width in the encoding sweep")->check(CLI::Range(1, 5));
  auto* n_opt = app.add_option("--n", n, "Index length for the rac suite")->check(CLI::Range(2, 6));
  auto* tol_opt = app.add_option("--tol", tol, "Override every per-check tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the JSON report here");
  app.add_option("--format", format, "Output on stdout")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!parse_dims(dims, cfg.dim_lo, cfg.dim_hi)) {
    std::cerr << "--dims: expected lo-hi\n" << app.help();
    return 2;
  }
  if (*trials_opt) cfg.trials = trials;
  if (*n_opt) cfg.n = n;
  if (*tol_opt) cfg.tol = tol;

  try {
    qic::validate(cfg);
  } catch (const qic::RangeError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  std::vector<qic::SuiteResult> results;
  try {
    results = qic::run_suites(cfg);
  } catch (const qic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  const nlohmann::json report = qic::build_report(cfg, results);
  const std::string body = qic::dump_canonical(report);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << body)) {
      std::cerr << "cannot write " << out_path << "\n";
      return 3;
    }
  }
  std::cout << (format == "json" ? body : qic::text_summary(results));
  return report["violations"].get<std::size_t>() == 0 ? 0 : 1;
}
