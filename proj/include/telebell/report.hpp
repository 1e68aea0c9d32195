#pragma once

// CLI-facing plumbing: state-spec parsing, the per-state analysis report
// with its JSON form, and the (lambda, alpha) scan with its CSV form.

#include <optional>
#include <string>
#include <vector>

#include "telebell/protocol.hpp"
#include "telebell/telebell.hpp"

namespace telebell::report {

inline constexpr const char *kToolVersion = "0.1.0";

// Formats with 17 significant digits so equal doubles serialize to equal
// bytes.
std::string fmt17(double v);

struct ParsedState {
  states::DensityOperator state;
  std::string descriptor;
  // Present when the spec named the two-parameter family, enabling the
  // family condition flags.
  std::optional<std::pair<double, double>> lambda_alpha;
};

// Accepts: "werner" | "d_lambda_alpha <l> <a>" | "bell Phi+|Phi-|Psi+|Psi-"
// | a path to a file with 16 "re im" lines, row-major 4x4.
// Throws ParseError for malformed specs and std::invalid_argument when the
// parsed matrix fails the density-operator invariants.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ParsedState parse_state_spec(const std::string &spec);

struct AnalysisReport {
  std::string descriptor;
  double beta = 0.0;
  double tau_raw = 0.0;
  double tau_lower_bound = 0.0;
  double f_st = 0.0;
  protocol::FidelityClass fidelity_class = protocol::FidelityClass::classical;
  std::optional<std::array<bool, 3>> conditions;  // bell, class1, class23
  tele::TeleSettings argmax;
  tele::OptimizerConfig config;
};

AnalysisReport analyze(const ParsedState &ps, const tele::OptimizerConfig &cfg = {});

std::string to_json(const AnalysisReport &r);

struct ScanRecord {
  double lambda = 0.0, alpha = 0.0;
  double beta = 0.0, tau_raw = 0.0, f_st = 0.0;
  bool bell_violating = false;
  bool tele_violating = false;
  bool nonclassical_fidelity = false;
  bool in_paper_region = false;  // bell AND class1 AND class23 conditions
};

struct GridSpec {
  double lo = 0.0, hi = 1.0, step = 0.05;
  std::vector<double> values() const;
};

// Grid points run in a parallel worker pool; records come back in grid
// order (lambda-major) regardless of completion order.
std::vector<ScanRecord> scan(const GridSpec &lambda_grid, const GridSpec &alpha_grid,
                             const tele::OptimizerConfig &cfg = {});

inline constexpr const char *kScanCsvHeader =
    "lambda,alpha,beta,tau_raw,f_st,bell_violating,tele_violating,"
    "nonclassical_fidelity,in_paper_region";

std::string to_csv(const std::vector<ScanRecord> &records);

}  // namespace telebell::report
