// Command-line front end: single-state analysis (JSON), (lambda, alpha)
// region scans (CSV) and verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "telebell/report.hpp"
#include "telebell/verify.hpp"

namespace {

using namespace telebell;

void apply_thread_cap() {
  if (const char *env = std::getenv("TELEBELL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

report::GridSpec parse_grid(const std::string &s) {
  report::GridSpec g;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &g.lo, &g.hi, &g.step) != 3)
    throw CLI::ValidationError("grid must have the form lo:hi:step");
  return g;
}

int run_analyze(const std::string &state_spec, const tele::OptimizerConfig &cfg,
                const std::string &json_path) {
  report::ParsedState ps = [&] {
    try {
      return report::parse_state_spec(state_spec);
    } catch (const report::ParseError &e) {
      std::cerr << "parse error: " << e.what() << "\n";
      std::exit(2);
    } catch (const std::invalid_argument &e) {
      std::cerr << "invalid state: " << e.what() << "\n";
      std::exit(3);
    }
  }();
  const std::string json = report::to_json(report::analyze(ps, cfg));
  std::cout << json;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 4;
    }
    out << json;
  }
  return 0;
}

int run_scan(const std::string &lambda_spec, const std::string &alpha_spec,
             const std::string &out_path, const tele::OptimizerConfig &cfg) {
  const auto records = report::scan(parse_grid(lambda_spec), parse_grid(alpha_spec), cfg);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 4;
  }
  out << report::to_csv(records);
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  return 0;
}

int run_verify(const std::string &suite, std::uint64_t seed, int trials) {
  std::vector<verify::CheckResult> results;
  if (suite == "paper-numbers") {
    results = {verify::check_maximal_violation(), verify::check_pure_beta_curve(),
               verify::check_werner(), verify::check_witness_point()};
  } else if (suite == "beta-ge-tau") {
    results = {verify::check_beta_ge_tau(seed, trials > 0 ? trials : 200)};
  } else if (suite == "threshold") {
    results = {verify::check_threshold(seed, trials > 0 ? trials : 50)};
  } else if (suite == "class-bounds") {
    results = {verify::check_class_bounds()};
  } else if (suite == "protocol") {
    results = {verify::check_protocol(seed)};
  } else {
    std::cerr << "unknown suite: " << suite
              << " (expected paper-numbers|beta-ge-tau|threshold|class-bounds|protocol)\n";
    return 2;
  }
  int failures = 0;
  for (const auto &r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail << "\n";
    if (!r.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  apply_thread_cap();

  CLI::App app{"Bell teleportation inequality analyzer"};
  app.require_subcommand(1);

  tele::OptimizerConfig cfg;
  std::string state_spec, json_path;
  auto *analyze = app.add_subcommand("analyze", "analyze a single channel state");
  analyze->add_option("--state", state_spec, "state spec (werner | d_lambda_alpha l a | bell Phi+ | matrix file)")
      ->required();
  analyze->add_option("--starts", cfg.starts, "multistart count per assignment pair");
  analyze->add_option("--grid-floor", cfg.grid_resolution, "angle-grid floor resolution");
  analyze->add_option("--json", json_path, "also write the JSON report to this path");

  std::string lambda_spec = "0:1:0.05", alpha_spec = "0:1:0.05", out_path;
  auto *scan = app.add_subcommand("scan", "scan the (lambda, alpha) family");
  scan->add_option("--lambda", lambda_spec, "lambda grid lo:hi:step");
  scan->add_option("--alpha", alpha_spec, "alpha grid lo:hi:step");
  scan->add_option("--out", out_path, "output CSV path")->required();
  scan->add_option("--starts", cfg.starts, "multistart count per assignment pair");
  scan->add_option("--grid-floor", cfg.grid_resolution, "angle-grid floor resolution");

  std::string suite;
  std::uint64_t seed = 1234;
  int trials = 0;
  auto *verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite, "paper-numbers|beta-ge-tau|threshold|class-bounds|protocol")
      ->required();
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--trials", trials, "trial count (suite dependent default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return run_analyze(state_spec, cfg, json_path);
    if (app.got_subcommand(scan)) return run_scan(lambda_spec, alpha_spec, out_path, cfg);
    return run_verify(suite, seed, trials);
  } catch (const CLI::ValidationError &e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
