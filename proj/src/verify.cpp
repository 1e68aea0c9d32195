#include "telebell/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "telebell/bellchsh.hpp"
#include "telebell/protocol.hpp"
#include "telebell/report.hpp"
#include "telebell/telebell.hpp"

namespace telebell::verify {

using la::ComplexMatrix;
using la::Vec3;
using states::BellIndex;
using states::DensityOperator;

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

double uniform(std::mt19937_64 &rng) { return (rng() >> 11) * 0x1.0p-53; }

Vec3 random_unit(std::mt19937_64 &rng) {
  const double z = 2.0 * uniform(rng) - 1.0;
  const double phi = 2.0 * M_PI * uniform(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

tele::BivalentAssignment random_assignment(std::mt19937_64 &rng) {
  const int mask = static_cast<int>(rng() & 15);
  return {mask & 8 ? 1 : -1, mask & 4 ? 1 : -1, mask & 2 ? 1 : -1, mask & 1 ? 1 : -1};
}

// The maximal-violation settings: Bell-diagonal sign patterns
// (-Psi+ +Psi- -Phi+ +Phi-) and (+Psi+ -Psi- -Phi+ +Phi-), equatorial
// unknown states at azimuths 0 and pi/2, Bob directions at +-45 degrees in
// the xy plane.
tele::TeleSettings maximal_violation_settings() {
  tele::TeleSettings ts;
  ts.assignment_1 = {-1, 1, -1, 1};
  ts.assignment_2 = {1, -1, -1, 1};
  ts.theta_1 = M_PI / 4.0;
  ts.vartheta_1 = 0.0;
  ts.theta_2 = M_PI / 4.0;
  ts.vartheta_2 = M_PI / 2.0;
  const double h = 1.0 / kSqrt2;
  ts.bob_1 = {h, h, 0.0};
  ts.bob_2 = {h, -h, 0.0};
  return ts;
}

struct Worst {
  double value = 0.0;
  void see(double v) { value = std::max(value, v); }
};

std::string fmt(double v) { return report::fmt17(v); }

CheckResult result(const std::string &name, bool passed, const std::string &detail) {
  return {name, passed, detail};
}

}  // namespace

CheckResult check_maximal_violation() {
  const DensityOperator d(states::bell_projector(BellIndex::PhiPlus));
  const double target = 2.0 * kSqrt2;
  const double direct = tele::tele_value(d, maximal_violation_settings());
  const double tau = tele::tau_max(d).tau_raw;
  const double e1 = std::abs(direct - target);
  const double e2 = std::abs(tau - target);
  return result("maximal violation (2*sqrt(2) settings and tau)", e1 <= 1e-9 && e2 <= 1e-4,
                "direct err " + fmt(e1) + ", tau err " + fmt(e2));
}

CheckResult check_pure_beta_curve() {
  Worst closed_err, oracle_err;
  for (int i = 0; i <= 10; ++i) {
    const double alpha = i / 10.0;
    const ComplexMatrix psi = states::psi_alpha(alpha);
    const DensityOperator d(la::outer(psi, psi));
    const double expected = 2.0 * std::sqrt(1.0 + 4.0 * alpha * alpha * (1.0 - alpha * alpha));
    closed_err.see(std::abs(chsh::beta_max(d) - expected));
    oracle_err.see(std::abs(chsh::beta_oracle(d, 32) - expected));
  }
  return result("pure-state beta curve", closed_err.value <= 1e-9 && oracle_err.value <= 1e-3,
                "closed err " + fmt(closed_err.value) + ", oracle err " + fmt(oracle_err.value));
}

CheckResult check_werner() {
  const DensityOperator w = states::werner_state();
  const double beta_err = std::abs(chsh::beta_max(w) - 2.0);
  const double tau = tele::tau_max(w).tau_raw;
  const double f_expected = 2.0 / 3.0 * (1.0 + (3.0 * kSqrt2 - 2.0) / 8.0);
  const double f_closed = protocol::fidelity_standard_closed(w);
  const double f_quad = protocol::fidelity_average(w, protocol::standard_strategy());
  const bool ok = beta_err <= 1e-9 && tau <= 2.0 + 1e-6 &&
                  std::abs(f_closed - f_expected) <= 1e-12 &&
                  std::abs(f_quad - f_closed) <= 2e-3;
  return result("Werner state", ok,
                "beta err " + fmt(beta_err) + ", tau " + fmt(tau) + ", fidelity err " +
                    fmt(std::abs(f_closed - f_expected)) + ", quadrature err " +
                    fmt(std::abs(f_quad - f_closed)));
}

CheckResult check_witness_point() {
  const double lambda = std::sqrt(3.0 / 5.0);
  const double alpha = std::sqrt(3.0) / 2.0;
  const bool conditions = tele::condition_bell(lambda, alpha) &&
                          tele::condition_class1(lambda, alpha) &&
                          tele::condition_class23(lambda, alpha);
  const DensityOperator d = states::d_lambda_alpha(lambda, alpha);
  const double beta_err = std::abs(chsh::beta_max(d) - 2.0 * std::sqrt(21.0 / 20.0));
  const double tau = tele::tau_max(d).tau_raw;

  // Negative controls: the maximally entangled point fails the class
  // conditions, and alpha = 1/sqrt(2) is excluded for every lambda.
  const bool control_max = !tele::condition_class1(1.0, 1.0 / kSqrt2) &&
                           !tele::condition_class23(1.0, 1.0 / kSqrt2);
  bool control_alpha = true;
  for (int i = 0; i <= 100; ++i) {
    const double l = i / 100.0;
    if (tele::condition_bell(l, 1.0 / kSqrt2) && tele::condition_class1(l, 1.0 / kSqrt2))
      control_alpha = false;
  }
  const bool ok =
      conditions && beta_err <= 1e-9 && tau <= 2.0 + 1e-6 && control_max && control_alpha;
  return result("witness point", ok,
                "conditions " + std::string(conditions ? "ok" : "FAIL") + ", beta err " +
                    fmt(beta_err) + ", tau " + fmt(tau) + ", controls " +
                    (control_max && control_alpha ? "ok" : "FAIL"));
}

CheckResult check_beta_ge_tau(std::uint64_t seed, int trials) {
  // A teleportation-term value comes from self-adjoint contractions. Choices
  // with an identity component can never push the combination past the
  // classical bound of 2, and the traceless part is dominated by the CHSH
  // maximum, so tau <= max(beta, 2) for every state. In particular any
  // teleportation violation (tau > 2) forces beta >= tau.
  Worst worst_gap;
  int failures = 0;
  int violating = 0;
  for (int i = 0; i < trials; ++i) {
    const DensityOperator d = states::random_density(seed + i, 1 + i % 4);
    const double beta = chsh::beta_max(d);
    const double tau = tele::tau_max(d).tau_raw;
    const double gap = tau - std::max(beta, 2.0);  // should stay <= 1e-6
    worst_gap.see(gap);
    if (gap > 1e-6) ++failures;
    if (tau > 2.0 + 1e-6) {
      ++violating;
      if (beta < tau - 1e-6) ++failures;
    }
  }
  std::ostringstream detail;
  detail << trials - failures << "/" << trials << " pass (" << violating
         << " violating), worst tau-max(beta,2) " << fmt(worst_gap.value);
  return result("tau <= max(beta, 2) on random densities", failures == 0, detail.str());
}

CheckResult check_threshold(std::uint64_t seed, int trials) {
  const ComplexMatrix singlet = states::bell_projector(BellIndex::PsiMinus);
  int failures = 0;
  Worst worst_slack;
  double min_tau = 1e9;
  for (int i = 0; i < trials; ++i) {
    const double eps = 0.05 * (i + 1) / trials;
    ComplexMatrix m = singlet;
    m *= (1.0 - eps);
    ComplexMatrix noise = states::random_density(seed + i, 4).matrix();
    noise *= eps;
    m += noise;
    const DensityOperator d(std::move(m));
    const tele::ThresholdCheck tc = tele::threshold_check(d);
    if (!tc.implies_violation) {
      ++failures;  // generator is expected to stay above the threshold
      continue;
    }
    const double tau = tele::tau_max(d).tau_raw;
    min_tau = std::min(min_tau, tau);
    worst_slack.see(tc.bound_value - tau);
    if (!(tau > 2.0) || tau < tc.bound_value - 1e-6) ++failures;
  }
  const double lb = tele::tau_lower_bound(states::d_lambda_alpha(0.7746, 0.8660));
  const bool ok = failures == 0 && lb < 2.0;
  return result("fidelity threshold forces violation", ok,
                "min tau " + fmt(min_tau) + ", worst bound-tau " + fmt(worst_slack.value) +
                    ", family lower bound " + fmt(lb));
}

CheckResult check_protocol(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const DensityOperator singlet(states::bell_projector(BellIndex::PsiMinus));
  const protocol::Strategy st = protocol::standard_strategy();

  Worst perfect_err;
  for (int i = 0; i < 50; ++i) {
    const auto phi = states::unknown_state(2.0 * M_PI * uniform(rng), 2.0 * M_PI * uniform(rng));
    perfect_err.see(std::abs(protocol::fidelity_for_state(phi, singlet, st) - 1.0));
  }

  Worst pathway_err;
  for (int i = 0; i < 50; ++i) {
    const DensityOperator d = states::random_density(seed ^ 0x9e3779b97f4a7c15ull, 1 + i % 4);
    pathway_err.see(std::abs(protocol::fidelity_rotation_form(d) -
                             protocol::fidelity_standard_closed(d)));
  }

  ComplexMatrix mixed = ComplexMatrix::identity(4);
  mixed *= 0.25;
  const DensityOperator maximally_mixed(std::move(mixed));
  Worst mixed_err;
  for (int i = 0; i < 10; ++i) {
    const auto phi = states::unknown_state(2.0 * M_PI * uniform(rng), 2.0 * M_PI * uniform(rng));
    mixed_err.see(std::abs(protocol::fidelity_for_state(phi, maximally_mixed, st) - 0.5));
  }

  const bool ok =
      perfect_err.value <= 1e-12 && pathway_err.value <= 1e-12 && mixed_err.value <= 1e-12;
  return result("teleportation protocol", ok,
                "perfect err " + fmt(perfect_err.value) + ", pathway err " +
                    fmt(pathway_err.value) + ", mixed err " + fmt(mixed_err.value));
}

CheckResult check_compatibility(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const DensityOperator d = states::random_density(seed + 1000 + i, 1 + i % 4);
    tele::TeleSettings ts;
    ts.assignment_1 = random_assignment(rng);
    ts.assignment_2 = random_assignment(rng);
    ts.theta_1 = ts.theta_2 = 2.0 * M_PI * uniform(rng);
    ts.vartheta_1 = ts.vartheta_2 = 2.0 * M_PI * uniform(rng);
    ts.bob_1 = random_unit(rng);
    ts.bob_2 = random_unit(rng);
    worst.see(tele::tele_value(d, ts));
  }
  return result("equal-angle compatibility bound", worst.value <= 2.0 + 1e-9,
                "max value " + fmt(worst.value));
}

CheckResult check_class_bounds() {
  // Coarser search than the default: the bound direction only needs the
  // restricted maximum not to exceed 2.
  tele::OptimizerConfig cfg;
  cfg.starts = 4;
  cfg.grid_resolution = 12;
  cfg.max_iterations = 200;

  Worst worst1, worst23;
  int checked1 = 0, checked23 = 0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double l = i / 20.0;
      const double a = j / 20.0;
      const DensityOperator d = states::d_lambda_alpha(l, a);
      if (tele::condition_class1(l, a)) {
        ++checked1;
        tele::OptimizerConfig c1 = cfg;
        c1.restrict_class = tele::AssignmentClass::I;
        worst1.see(tele::tau_max(d, c1).tau_raw);
      }
      if (tele::condition_class23(l, a)) {
        ++checked23;
        for (const auto cls : {tele::AssignmentClass::II, tele::AssignmentClass::III}) {
          tele::OptimizerConfig c2 = cfg;
          c2.restrict_class = cls;
          worst23.see(tele::tau_max(d, c2).tau_raw);
        }
      }
    }
  const bool ok = worst1.value <= 2.0 + 1e-6 && worst23.value <= 2.0 + 1e-6;
  std::ostringstream detail;
  detail << checked1 << " class-I points (max " << fmt(worst1.value) << "), " << checked23
         << " class-II/III points (max " << fmt(worst23.value) << ")";
  return result("class-condition soundness", ok, detail.str());
}

CheckResult check_construction(std::uint64_t seed) {
  std::mt19937_64 rng(seed);

  // Trigonometric expansion vs direct matrix elements, all assignments.
  Worst contraction_err;
  for (int mask = 0; mask < 16; ++mask) {
    const tele::BivalentAssignment s{mask & 8 ? 1 : -1, mask & 4 ? 1 : -1, mask & 2 ? 1 : -1,
                                     mask & 1 ? 1 : -1};
    for (int k = 0; k < 20; ++k) {
      const double theta = 2.0 * M_PI * uniform(rng);
      const double vartheta = 2.0 * M_PI * uniform(rng);
      const ComplexMatrix a = tele::contraction_x(s, theta, vartheta);
      const ComplexMatrix b =
          tele::contraction_x_oracle(s, states::unknown_state(theta, vartheta));
      contraction_err.see((a - b).max_abs());
    }
  }

  // Exact Bob step vs a direction-grid oracle built from raw correlators.
  const auto grid = protocol::fibonacci_sphere(20000);
  Worst inner_err;
  for (int k = 0; k < 20; ++k) {
    const DensityOperator d = states::random_density(seed + 500 + k, 1 + k % 4);
    auto random_contraction = [&rng]() {
      tele::ContractionBloch cb;
      cb.x0 = 0.6 * (uniform(rng) - 0.5);
      const Vec3 dir = random_unit(rng);
      const double r = uniform(rng) * (1.0 - std::abs(cb.x0));
      cb.x = la::scale(r, dir);
      return cb;
    };
    const tele::ContractionBloch x1 = random_contraction();
    const tele::ContractionBloch x2 = random_contraction();
    const states::CorrelationMatrix corr = states::correlation_matrix(d);
    const tele::InnerMax im = tele::inner_max_over_bob(corr, x1, x2);

    // Oracle: correlators straight from 4x4 expectations, independent grid
    // maximization of the two linear terms.
    const states::Axis axes[3] = {states::Axis::x, states::Axis::y, states::Axis::z};
    auto correlators = [&](const tele::ContractionBloch &x) {
      const ComplexMatrix xm = tele::contraction_matrix(x);
      Vec3 r{};
      for (int n = 0; n < 3; ++n)
        r[n] = (d.matrix() * la::kron(xm, states::pauli(axes[n]))).trace().real();
      return r;
    };
    const Vec3 r1 = correlators(x1);
    const Vec3 r2 = correlators(x2);
    double best_sum = 0.0, best_diff = 0.0;
    for (const Vec3 &b : grid) {
      best_sum = std::max(best_sum, std::abs(la::dot(la::add(r1, r2), b)));
      best_diff = std::max(best_diff, std::abs(la::dot(la::sub(r1, r2), b)));
    }
    inner_err.see(std::abs(im.value - (best_sum + best_diff)));
  }

  const bool ok = contraction_err.value <= 1e-12 && inner_err.value <= 1e-3;
  return result("contraction cross-checks", ok,
                "contraction err " + fmt(contraction_err.value) + ", inner-max err " +
                    fmt(inner_err.value));
}

std::vector<CheckResult> run_all(std::uint64_t seed, int trials) {
  return {check_maximal_violation(),
          check_pure_beta_curve(),
          check_werner(),
          check_witness_point(),
          check_beta_ge_tau(seed, trials > 0 ? trials : 200),
          check_threshold(seed, 50),
          check_protocol(seed),
          check_compatibility(seed, 500),
          check_class_bounds(),
          check_construction(seed)};
}

}  // namespace telebell::verify
