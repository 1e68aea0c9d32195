#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "telebell/bellchsh.hpp"

using namespace telebell;
using la::ComplexMatrix;
using states::BellIndex;
using states::DensityOperator;

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

DensityOperator pure(const ComplexMatrix &psi) { return DensityOperator(la::outer(psi, psi)); }

}  // namespace

TEST_CASE("chsh_value at the Tsirelson settings of the singlet") {
  const DensityOperator singlet(states::bell_projector(BellIndex::PsiMinus));
  const double h = 1.0 / kSqrt2;
  chsh::ChshSettings s;
  s.a = {0.0, 0.0, 1.0};
  s.a_prime = {1.0, 0.0, 0.0};
  s.b = {-h, 0.0, -h};
  s.b_prime = {h, 0.0, -h};
  CHECK(std::abs(chsh::chsh_value(singlet, s)) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  chsh::ChshSettings bad = s;
  bad.b = {1.0, 1.0, 0.0};
  CHECK_THROWS_AS(chsh::chsh_value(singlet, bad), std::invalid_argument);
}

TEST_CASE("beta_max benchmarks") {
  const DensityOperator singlet(states::bell_projector(BellIndex::PsiMinus));
  CHECK(chsh::beta_max(singlet) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  CHECK(chsh::beta_max(states::werner_state()) == doctest::Approx(2.0).epsilon(1e-12));
  ComplexMatrix mixed = ComplexMatrix::identity(4);
  mixed *= 0.25;
  CHECK(chsh::beta_max(DensityOperator(mixed)) == doctest::Approx(0.0).epsilon(1e-12));
  // Nonmaximal pure states follow 2 sqrt(1 + 4 a^2 (1-a^2)).
  for (double alpha : {0.2, 0.5, 0.9}) {
    const double expected = 2.0 * std::sqrt(1.0 + 4.0 * alpha * alpha * (1.0 - alpha * alpha));
    CHECK(chsh::beta_max(pure(states::psi_alpha(alpha))) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("beta_max never exceeds the Tsirelson bound and dominates chsh_value") {
  std::uint64_t seed = 300;
  for (int i = 0; i < 15; ++i) {
    const DensityOperator d = states::random_density(seed + i, 1 + i % 4);
    const double beta = chsh::beta_max(d);
    CHECK(beta <= 2.0 * kSqrt2 + 1e-12);
    CHECK(beta >= 0.0);
    // Any concrete settings value is dominated.
    const double h = 1.0 / kSqrt2;
    chsh::ChshSettings s;
    s.a = {0.0, 0.0, 1.0};
    s.a_prime = {1.0, 0.0, 0.0};
    s.b = {-h, 0.0, -h};
    s.b_prime = {h, 0.0, -h};
    CHECK(std::abs(chsh::chsh_value(d, s)) <= beta + 1e-10);
  }
}

TEST_CASE("beta_max is invariant under local unitaries") {
  // A local rotation on either side permutes Bloch coordinates only.
  const DensityOperator d = states::random_density(451, 3);
  // exp(-i pi/8 sigma_y) on Alice x exp(-i pi/5 sigma_z) on Bob.
  const double a = M_PI / 8.0, b = M_PI / 5.0;
  ComplexMatrix ua(2, 2), ub(2, 2);
  ua(0, 0) = std::cos(a); ua(0, 1) = -std::sin(a);
  ua(1, 0) = std::sin(a); ua(1, 1) = std::cos(a);
  ub(0, 0) = std::polar(1.0, -b); ub(1, 1) = std::polar(1.0, b);
  const ComplexMatrix u = la::kron(ua, ub);
  const DensityOperator rotated(u * d.matrix() * u.adjoint());
  CHECK(chsh::beta_max(rotated) == doctest::Approx(chsh::beta_max(d)).epsilon(1e-9));
}

TEST_CASE("beta_max is convex-compatible: mixtures never beat the mixture of maxima") {
  const DensityOperator d1 = states::random_density(500, 2);
  const DensityOperator d2 = states::random_density(501, 4);
  for (double w : {0.25, 0.5, 0.75}) {
    ComplexMatrix m = d1.matrix();
    m *= w;
    ComplexMatrix m2 = d2.matrix();
    m2 *= (1.0 - w);
    m += m2;
    const DensityOperator mix(m);
    CHECK(chsh::beta_max(mix) <= w * chsh::beta_max(d1) + (1.0 - w) * chsh::beta_max(d2) + 1e-10);
  }
}

TEST_CASE("the grid oracle converges to the closed form") {
  for (int i = 0; i < 6; ++i) {
    const DensityOperator d = states::random_density(600 + i, 1 + i % 4);
    const double closed = chsh::beta_max(d);
    const double coarse = chsh::beta_oracle(d, 16);
    const double fine = chsh::beta_oracle(d, 48);
    CHECK(coarse <= closed + 1e-9);  // a search can only undershoot
    CHECK(std::abs(fine - closed) < 1e-6);
    CHECK(fine >= coarse - 1e-9);
  }
}

TEST_CASE("parallel and serial oracles are bit-identical") {
  for (int i = 0; i < 3; ++i) {
    const DensityOperator d = states::random_density(650 + i, 4);
    CHECK(chsh::beta_oracle(d, 24) == chsh::beta_oracle_serial(d, 24));
  }
}
