#pragma once

// Self-contained verification checks covering the headline quantitative
// claims: the maximal violation, the beta >= tau ordering, the fidelity
// threshold, the sign-class bounds and the construction cross-checks.
// Shared by the acceptance runner and the CLI `verify` command.

#include <cstdint>
#include <string>
#include <vector>

namespace telebell::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // worst observed deviation or first failure
};

CheckResult check_maximal_violation();                              // 2*sqrt(2) point
CheckResult check_pure_beta_curve();                                // closed form vs oracle
CheckResult check_werner();                                         // beta, tau, fidelity
CheckResult check_witness_point();                                  // region point + controls
CheckResult check_beta_ge_tau(std::uint64_t seed, int trials);      // random densities
CheckResult check_threshold(std::uint64_t seed, int trials);        // high-fidelity mixtures
CheckResult check_protocol(std::uint64_t seed);                     // teleportation fidelity
CheckResult check_compatibility(std::uint64_t seed, int trials);    // equal-angle bound
CheckResult check_class_bounds();                                   // restricted maxima
CheckResult check_construction(std::uint64_t seed);                 // contraction cross-checks

// All ten, in acceptance order.
std::vector<CheckResult> run_all(std::uint64_t seed, int trials);

}  // namespace telebell::verify
