#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "telebell/protocol.hpp"

using namespace telebell;
using la::ComplexMatrix;
using states::BellIndex;
using states::DensityOperator;

namespace {

double uniform(std::mt19937_64 &rng) { return (rng() >> 11) * 0x1.0p-53; }

states::PureQubitState random_pure(std::mt19937_64 &rng) {
  return states::unknown_state(M_PI * uniform(rng), 2.0 * M_PI * uniform(rng));
}

}  // namespace

TEST_CASE("bell_measure on the singlet channel: uniform outcomes, known posts") {
  const DensityOperator singlet(states::bell_projector(BellIndex::PsiMinus));
  const auto phi = states::unknown_state(0.9, 2.1);
  const auto outcomes = protocol::bell_measure(phi, singlet);
  const auto strategy = protocol::standard_strategy();
  double total = 0.0;
  for (const auto &o : outcomes) {
    CHECK(o.probability == doctest::Approx(0.25).epsilon(1e-12));
    total += o.probability;
    REQUIRE(o.post_state_defined);
    // The standard correction restores |phi> exactly.
    const ComplexMatrix u = strategy.u[o.n - 1];
    const ComplexMatrix fixed = u * o.post_state * u.adjoint();
    ComplexMatrix diff = fixed;
    diff -= phi.projector();
    CHECK(diff.max_abs() < 1e-12);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("outcome probabilities always sum to one") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const DensityOperator d = states::random_density(50 + i, 1 + i % 4);
    const auto outcomes = protocol::bell_measure(random_pure(rng), d);
    double total = 0.0;
    for (const auto &o : outcomes) {
      CHECK(o.probability >= -1e-12);
      total += o.probability;
      if (o.post_state_defined) {
        CHECK(std::abs(o.post_state.trace().real() - 1.0) < 1e-10);
      }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("fidelity pathways agree: direct average, closed form, rotation form") {
  protocol::QuadratureSpec quad;
  quad.points = 4096;
  for (int i = 0; i < 6; ++i) {
    const DensityOperator d = states::random_density(70 + i, 1 + i % 4);
    const double closed = protocol::fidelity_standard_closed(d);
    const double rot = protocol::fidelity_rotation_form(d);
    const double quadrature = protocol::fidelity_average(d, protocol::standard_strategy(), quad);
    CHECK(std::abs(rot - closed) < 1e-12);
    CHECK(std::abs(quadrature - closed) < 2e-3);
  }
}

TEST_CASE("correction rotations contract against the Pauli algebra") {
  const auto triples = protocol::standard_rotation_triples();
  const auto strategy = protocol::standard_strategy();
  std::mt19937_64 rng(9);
  for (int n = 0; n < 4; ++n) {
    const ComplexMatrix u = strategy.u[n];
    for (int rep = 0; rep < 20; ++rep) {
      const double z = 2.0 * uniform(rng) - 1.0;
      const double ph = 2.0 * M_PI * uniform(rng);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const la::Vec3 b{r * std::cos(ph), r * std::sin(ph), z};
      // U (b.sigma) U^-1 == (O^T b).sigma
      const ComplexMatrix lhs = u * states::spin_component(b) * u.adjoint();
      const la::Vec3 ob = la::matvec(la::transpose(triples.correction_o[n]), b);
      const ComplexMatrix rhs = states::spin_component(ob);
      ComplexMatrix diff = lhs;
      diff -= rhs;
      CHECK(diff.max_abs() < 1e-12);
    }
  }
}

TEST_CASE("benchmark channels: singlet perfect, mixed 1/2, Werner value") {
  const DensityOperator singlet(states::bell_projector(BellIndex::PsiMinus));
  CHECK(protocol::fidelity_standard_closed(singlet) == doctest::Approx(1.0).epsilon(1e-14));
  ComplexMatrix mixed = ComplexMatrix::identity(4);
  mixed *= 0.25;
  CHECK(protocol::fidelity_standard_closed(DensityOperator(mixed)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  const double expected = 2.0 / 3.0 * (1.0 + (3.0 * std::sqrt(2.0) - 2.0) / 8.0);
  CHECK(std::abs(protocol::fidelity_standard_closed(states::werner_state()) - expected) < 1e-12);
}

TEST_CASE("classify_fidelity boundaries") {
  using protocol::FidelityClass;
  CHECK(protocol::classify_fidelity(2.0 / 3.0) == FidelityClass::classical);
  CHECK(protocol::classify_fidelity(2.0 / 3.0 + 1e-9) == FidelityClass::nonclassical);
  CHECK(protocol::classify_fidelity(protocol::kFidelityThreshold) == FidelityClass::nonclassical);
  CHECK(protocol::classify_fidelity(protocol::kFidelityThreshold + 1e-9) ==
        FidelityClass::above_threshold);
  CHECK_THROWS_AS(protocol::classify_fidelity(1.5), std::invalid_argument);
  CHECK(std::string(protocol::to_string(FidelityClass::above_threshold)) == "above_threshold");
}

TEST_CASE("parallel and serial quadrature are bit-identical") {
  protocol::QuadratureSpec quad;
  quad.points = 3000;
  for (int i = 0; i < 3; ++i) {
    const DensityOperator d = states::random_density(90 + i, 4);
    const double p = protocol::fidelity_average(d, protocol::standard_strategy(), quad);
    const double s = protocol::fidelity_average_serial(d, protocol::standard_strategy(), quad);
    CHECK(p == s);
  }
  protocol::QuadratureSpec mc;
  mc.kind = protocol::QuadratureSpec::Kind::monte_carlo;
  mc.points = 3000;
  mc.seed = 17;
  const DensityOperator d = states::random_density(99, 4);
  CHECK(protocol::fidelity_average(d, protocol::standard_strategy(), mc) ==
        protocol::fidelity_average_serial(d, protocol::standard_strategy(), mc));
}

TEST_CASE("fibonacci_sphere covers the sphere evenly") {
  const auto pts = protocol::fibonacci_sphere(2000);
  REQUIRE(pts.size() == 2000);
  la::Vec3 mean{0.0, 0.0, 0.0};
  for (const auto &p : pts) {
    CHECK(la::norm(p) == doctest::Approx(1.0).epsilon(1e-12));
    mean = la::add(mean, p);
  }
  CHECK(la::norm(mean) / 2000.0 < 1e-2);
}
