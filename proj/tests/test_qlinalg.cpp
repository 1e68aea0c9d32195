#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "telebell/qlinalg.hpp"

using namespace telebell;
using la::ComplexMatrix;
using la::cplx;

namespace {

double uniform(std::mt19937_64 &rng) { return (rng() >> 11) * 0x1.0p-53; }

ComplexMatrix random_hermitian(std::mt19937_64 &rng, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0 * uniform(rng) - 1.0;
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cplx(2.0 * uniform(rng) - 1.0, 2.0 * uniform(rng) - 1.0);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

double frob_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix d = a;
  d -= b;
  return d.max_abs();
}

}  // namespace

TEST_CASE("matrix product and adjoint") {
  ComplexMatrix a(2, 2), b(2, 2);
  a(0, 0) = 1.0; a(0, 1) = cplx(0.0, 1.0);
  a(1, 0) = 2.0; a(1, 1) = -1.0;
  b(0, 0) = 0.5; b(0, 1) = 1.0;
  b(1, 0) = cplx(0.0, -1.0); b(1, 1) = 3.0;
  const ComplexMatrix ab = a * b;
  CHECK(std::abs(ab(0, 0) - (cplx(0.5) + cplx(0.0, 1.0) * cplx(0.0, -1.0))) < 1e-15);
  CHECK(frob_diff(ab.adjoint(), b.adjoint() * a.adjoint()) < 1e-15);
  CHECK(std::abs(ab.trace() - (ab(0, 0) + ab(1, 1))) < 1e-15);
}

TEST_CASE("kron is bilinear and associative") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_hermitian(rng, 2);
  const ComplexMatrix b = random_hermitian(rng, 2);
  const ComplexMatrix c = random_hermitian(rng, 2);
  CHECK(frob_diff(la::kron(a + b, c), la::kron(a, c) + la::kron(b, c)) < 1e-14);
  CHECK(frob_diff(la::kron(a, b + c), la::kron(a, b) + la::kron(a, c)) < 1e-14);
  CHECK(frob_diff(la::kron(la::kron(a, b), c), la::kron(a, la::kron(b, c))) < 1e-13);
  const cplx s(0.7, -0.3);
  CHECK(frob_diff(la::kron(s * a, b), s * la::kron(a, b)) < 1e-14);
}

TEST_CASE("kron index layout puts the first factor on the high bits") {
  ComplexMatrix up = la::ket({1.0, 0.0});
  ComplexMatrix down = la::ket({0.0, 1.0});
  const ComplexMatrix v = la::kron(up, down);  // |up down> = index 01
  CHECK(std::abs(v(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(v(0, 0)) < 1e-15);
}

TEST_CASE("hermitian_eigen on a known 2x2") {
  // sigma_x: eigenvalues +-1 with eigenvectors (1, +-1)/sqrt(2).
  ComplexMatrix sx(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const auto r = la::hermitian_eigen(sx);
  CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(r.eigenvectors(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("hermitian_eigen reconstructs random matrices") {
  std::mt19937_64 rng(21);
  for (int n : {2, 4, 8}) {
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix h = random_hermitian(rng, n);
      const auto r = la::hermitian_eigen(h);
      // Eigenvalues descending, summing to the trace.
      double sum = 0.0;
      for (int i = 0; i + 1 < n; ++i) CHECK(r.eigenvalues[i] >= r.eigenvalues[i + 1]);
      for (double ev : r.eigenvalues) sum += ev;
      CHECK(sum == doctest::Approx(h.trace().real()).epsilon(1e-10));
      // V diag(ev) V^dag == H and V^dag V == I.
      ComplexMatrix d(n, n);
      for (int i = 0; i < n; ++i) d(i, i) = r.eigenvalues[i];
      CHECK(frob_diff(r.eigenvectors * d * r.eigenvectors.adjoint(), h) < 1e-10);
      CHECK(frob_diff(r.eigenvectors.adjoint() * r.eigenvectors, ComplexMatrix::identity(n)) <
            1e-11);
    }
  }
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;  // m(1,0) stays 0
  CHECK_THROWS_AS(la::hermitian_eigen(m), std::invalid_argument);
}

TEST_CASE("partial_trace of a product factorizes") {
  std::mt19937_64 rng(31);
  const ComplexMatrix a = random_hermitian(rng, 2);
  const ComplexMatrix b = random_hermitian(rng, 2);
  const ComplexMatrix ab = la::kron(a, b);
  CHECK(frob_diff(la::partial_trace(ab, {1}), b.trace() * a) < 1e-13);
  CHECK(frob_diff(la::partial_trace(ab, {2}), a.trace() * b) < 1e-13);

  const ComplexMatrix c = random_hermitian(rng, 2);
  const ComplexMatrix abc = la::kron(la::kron(a, b), c);
  CHECK(frob_diff(la::partial_trace(abc, {3}), (a.trace() * b.trace()) * c) < 1e-12);
  CHECK(frob_diff(la::partial_trace(abc, {1, 2}), c.trace() * la::kron(a, b)) < 1e-12);
  // Tracing in two stages matches tracing at once.
  CHECK(frob_diff(la::partial_trace(la::partial_trace(abc, {2, 3}), {2}), //
                  la::partial_trace(abc, {3})) < 1e-12);
}

TEST_CASE("partial_trace preserves the trace") {
  std::mt19937_64 rng(41);
  const ComplexMatrix m = random_hermitian(rng, 8);
  for (auto keep : {std::vector<int>{1}, {2}, {3}, {1, 3}, {2, 3}}) {
    CHECK(std::abs(la::partial_trace(m, keep).trace() - m.trace()) < 1e-12);
  }
}

TEST_CASE("symmetric3_eigenvalues on a diagonal and a rotated matrix") {
  la::Mat3 d{{{3.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 0.5}}};
  auto ev = la::symmetric3_eigenvalues(d);
  CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(-1.0).epsilon(1e-12));

  // Conjugating by a rotation leaves the spectrum alone.
  const double c = std::cos(0.6), s = std::sin(0.6);
  la::Mat3 r{{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
  const la::Mat3 m = la::matmul(la::matmul(r, d), la::transpose(r));
  auto ev2 = la::symmetric3_eigenvalues(m);
  for (int i = 0; i < 3; ++i) CHECK(ev2[i] == doctest::Approx(ev[i]).epsilon(1e-12));
}

TEST_CASE("vector helpers") {
  la::Vec3 v{3.0, 0.0, 4.0};
  CHECK(la::norm(v) == doctest::Approx(5.0));
  CHECK(la::norm(la::normalized(v)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(la::normalized(la::Vec3{0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK(la::dot(la::Vec3{1.0, 2.0, 3.0}, la::Vec3{-1.0, 0.5, 2.0}) == doctest::Approx(6.0));
}
