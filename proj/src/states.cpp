#include "telebell/states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace telebell::states {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

ComplexMatrix pauli(Axis axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case Axis::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::y:
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    case Axis::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

ComplexMatrix spin_component(const Vec3 &n) {
  if (std::abs(la::norm(n) - 1.0) > 1e-10)
    throw std::invalid_argument("spin_component: direction must be a unit vector");
  ComplexMatrix m(2, 2);
  m(0, 0) = n[2];
  m(1, 1) = -n[2];
  m(0, 1) = cplx(n[0], -n[1]);
  m(1, 0) = cplx(n[0], n[1]);
  return m;
}

ComplexMatrix PureQubitState::projector() const { return la::outer(ket(), ket()); }

double PureQubitState::norm() const {
  return std::sqrt(std::norm(amplitudes[0]) + std::norm(amplitudes[1]));
}

PureQubitState unknown_state(double theta, double vartheta) {
  return PureQubitState{{std::sin(theta), std::cos(theta) * std::polar(1.0, vartheta)}};
}

PureQubitState bloch_state(const Vec3 &n) {
  if (std::abs(la::norm(n) - 1.0) > 1e-10)
    throw std::invalid_argument("bloch_state: direction must be a unit vector");
  const double polar = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double azimuth = std::atan2(n[1], n[0]);
  return PureQubitState{{std::cos(polar / 2.0), std::sin(polar / 2.0) * std::polar(1.0, azimuth)}};
}

ComplexMatrix bell_ket(BellIndex which) {
  ComplexMatrix v(4, 1);
  switch (which) {
    case BellIndex::PhiPlus:
      v(0, 0) = kInvSqrt2;
      v(3, 0) = kInvSqrt2;
      break;
    case BellIndex::PhiMinus:
      v(0, 0) = kInvSqrt2;
      v(3, 0) = -kInvSqrt2;
      break;
    case BellIndex::PsiPlus:
      v(1, 0) = kInvSqrt2;
      v(2, 0) = kInvSqrt2;
      break;
    case BellIndex::PsiMinus:
      v(1, 0) = kInvSqrt2;
      v(2, 0) = -kInvSqrt2;
      break;
  }
  return v;
}

ComplexMatrix bell_projector(BellIndex which) {
  const ComplexMatrix v = bell_ket(which);
  return la::outer(v, v);
}

BellIndex bell_index_from_outcome(int n) {
  switch (n) {
    case 1: return BellIndex::PsiMinus;
    case 2: return BellIndex::PhiMinus;
    case 3: return BellIndex::PhiPlus;
    case 4: return BellIndex::PsiPlus;
  }
  throw std::invalid_argument("bell_index_from_outcome: outcome must be 1..4");
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 4 || m_.cols() != 4)
    throw std::invalid_argument("DensityOperator: matrix must be 4x4");
  if (!m_.all_finite()) throw std::invalid_argument("DensityOperator: non-finite entries");
  if (!m_.is_hermitian(1e-10)) throw std::invalid_argument("DensityOperator: matrix not Hermitian");
  if (std::abs(m_.trace() - cplx(1.0, 0.0)) > 1e-10)
    throw std::invalid_argument("DensityOperator: trace must be 1");
  const auto eig = la::hermitian_eigen(m_);
  if (eig.eigenvalues.back() < -1e-9)
    throw std::invalid_argument("DensityOperator: not positive semidefinite (min eigenvalue " +
                                std::to_string(eig.eigenvalues.back()) + ")");
}

DensityOperator werner_state() {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m *= (1.0 - kInvSqrt2) / 4.0;
  m += kInvSqrt2 * bell_projector(BellIndex::PsiMinus);
  return DensityOperator(std::move(m));
}

ComplexMatrix plus_minus_ket(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("plus_minus_ket: sign must be +1 or -1");
  const double s3 = std::sqrt(3.0);
  const double denom = std::sqrt(2.0 * (3.0 + sign * s3));
  return la::ket({cplx((1.0 + sign * s3) / denom, 0.0), cplx(1.0 / denom, 1.0 / denom)});
}

ComplexMatrix psi_alpha(double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("psi_alpha: alpha must lie in [0,1]");
  const ComplexMatrix plus = plus_minus_ket(+1);
  const ComplexMatrix minus = plus_minus_ket(-1);
  ComplexMatrix v = kron(plus, plus);
  v *= alpha;
  ComplexMatrix w = kron(minus, minus);
  w *= std::sqrt(1.0 - alpha * alpha);
  v += w;
  return v;
}

DensityOperator d_lambda_alpha(double lambda, double alpha) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("d_lambda_alpha: lambda must lie in [0,1]");
  const ComplexMatrix v = psi_alpha(alpha);
  ComplexMatrix m = ComplexMatrix::identity(4);
  m *= (1.0 - lambda) / 4.0;
  m += lambda * la::outer(v, v);
  return DensityOperator(std::move(m));
}

CorrelationMatrix correlation_matrix(const DensityOperator &d) {
  const ComplexMatrix &rho = d.matrix();
  const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
  const ComplexMatrix id = ComplexMatrix::identity(2);
  CorrelationMatrix c{};
  for (int m = 0; m < 3; ++m) {
    const ComplexMatrix sm = pauli(axes[m]);
    c.bloch_a[m] = (rho * kron(sm, id)).trace().real();
    c.bloch_b[m] = (rho * kron(id, sm)).trace().real();
    for (int n = 0; n < 3; ++n)
      c.t[m][n] = (rho * kron(sm, pauli(axes[n]))).trace().real();
  }
  return c;
}

DensityOperator random_density(std::uint64_t seed, int rank) {
  if (rank < 1 || rank > 4) throw std::invalid_argument("random_density: rank must be 1..4");
  std::mt19937_64 rng(seed);
  // Hand-rolled Box-Muller so the stream is identical across standard
  // library implementations.
  auto uniform = [&rng]() { return ((rng() >> 11) + 1.0) * 0x1.0p-53; };  // (0,1]
  auto gaussian_pair = [&uniform](double &g1, double &g2) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * M_PI * uniform();
    g1 = r * std::cos(phi);
    g2 = r * std::sin(phi);
  };
  // G is 4 x rank; store row-major.
  std::vector<cplx> g(static_cast<size_t>(4 * rank));
  for (auto &z : g) {
    double re, im;
    gaussian_pair(re, im);
    z = cplx(re, im);
  }
  ComplexMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < rank; ++k) s += g[i * rank + k] * std::conj(g[j * rank + k]);
      m(i, j) = s;
    }
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  // Symmetrize away rounding noise so the validator's Hermiticity gate passes.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  return DensityOperator(std::move(m));
}

}  // namespace telebell::states
