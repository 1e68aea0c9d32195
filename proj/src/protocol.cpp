#include "telebell/protocol.hpp"

#include <random>
#include <stdexcept>

namespace telebell::protocol {

using states::Axis;
using states::bell_index_from_outcome;
using states::bell_projector;

Strategy standard_strategy() {
  Strategy s;
  s.u[0] = ComplexMatrix::identity(2);
  s.u[1] = states::pauli(Axis::x);
  s.u[2] = states::pauli(Axis::y);
  s.u[3] = states::pauli(Axis::z);
  return s;
}

std::array<MeasurementOutcome, 4> bell_measure(const PureQubitState &phi,
                                               const DensityOperator &d) {
  const ComplexMatrix rho = la::kron(phi.projector(), d.matrix());  // qubits 1+2+3
  const ComplexMatrix id2 = ComplexMatrix::identity(2);

  std::array<MeasurementOutcome, 4> out;
  for (int n = 1; n <= 4; ++n) {
    const ComplexMatrix proj = la::kron(bell_projector(bell_index_from_outcome(n)), id2);
    const ComplexMatrix projected = proj * rho * proj;
    const double p = projected.trace().real();
    MeasurementOutcome &o = out[n - 1];
    o.n = n;
    o.probability = std::max(p, 0.0);
    if (p > 1e-14) {
      o.post_state = la::partial_trace(projected, {3});
      o.post_state *= 1.0 / p;
      o.post_state_defined = true;
    }
  }
  return out;
}

double fidelity_for_state(const PureQubitState &phi, const DensityOperator &d,
                          const Strategy &s) {
  const auto outcomes = bell_measure(phi, d);
  const ComplexMatrix target = phi.projector();
  double f = 0.0;
  for (const MeasurementOutcome &o : outcomes) {
    if (!o.post_state_defined) continue;  // zero-probability branch contributes nothing
    const ComplexMatrix &u = s.u[o.n - 1];
    const ComplexMatrix corrected = u * o.post_state * u.adjoint();
    f += o.probability * (corrected * target).trace().real();
  }
  return f;
}

std::vector<Vec3> fibonacci_sphere(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_sphere: need at least one point");
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

namespace {

std::vector<Vec3> quadrature_directions(const QuadratureSpec &quad) {
  if (quad.points < 1) throw std::invalid_argument("quadrature: need at least one point");
  if (quad.kind == QuadratureSpec::Kind::fibonacci_grid) return fibonacci_sphere(quad.points);
  std::mt19937_64 rng(quad.seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };  // [0,1)
  std::vector<Vec3> pts;
  pts.reserve(quad.points);
  for (int i = 0; i < quad.points; ++i) {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * M_PI * uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

}  // namespace

double fidelity_average(const DensityOperator &d, const Strategy &s,
                        const QuadratureSpec &quad) {
  const std::vector<Vec3> dirs = quadrature_directions(quad);
  const int n = static_cast<int>(dirs.size());
  std::vector<double> values(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    values[i] = fidelity_for_state(states::bloch_state(dirs[i]), d, s);
  // Fixed-order reduction: the result does not depend on the worker count.
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += values[i];
  return sum / n;
}

double fidelity_average_serial(const DensityOperator &d, const Strategy &s,
                               const QuadratureSpec &quad) {
  const std::vector<Vec3> dirs = quadrature_directions(quad);
  const int n = static_cast<int>(dirs.size());
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i)
    values[i] = fidelity_for_state(states::bloch_state(dirs[i]), d, s);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += values[i];
  return sum / n;
}

double fidelity_standard_closed(const CorrelationMatrix &c) {
  return 0.5 - (c.t[0][0] + c.t[1][1] + c.t[2][2]) / 6.0;
}

double fidelity_standard_closed(const DensityOperator &d) {
  return fidelity_standard_closed(states::correlation_matrix(d));
}

namespace {

Mat3 diag3(double a, double b, double c) {
  Mat3 m{};
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  return m;
}

}  // namespace

RotationTriple standard_rotation_triples() {
  RotationTriple r;
  r.outcome_t[0] = diag3(-1, -1, -1);
  r.outcome_t[1] = diag3(-1, 1, 1);
  r.outcome_t[2] = diag3(1, -1, 1);
  r.outcome_t[3] = diag3(1, 1, -1);
  r.correction_o[0] = diag3(1, 1, 1);
  r.correction_o[1] = diag3(1, -1, -1);
  r.correction_o[2] = diag3(-1, 1, -1);
  r.correction_o[3] = diag3(-1, -1, 1);
  return r;
}

double fidelity_rotation_form(const DensityOperator &d) {
  const CorrelationMatrix c = states::correlation_matrix(d);
  const RotationTriple r = standard_rotation_triples();
  double f = 0.0;
  for (int n = 0; n < 4; ++n) {
    const Mat3 prod = la::matmul(la::matmul(la::transpose(r.outcome_t[n]), c.t), r.correction_o[n]);
    f += (1.0 + (prod[0][0] + prod[1][1] + prod[2][2]) / 3.0) / 8.0;
  }
  return f;
}

FidelityClass classify_fidelity(double f) {
  if (f < 0.0 || f > 1.0) throw std::invalid_argument("classify_fidelity: fidelity must lie in [0,1]");
  if (f <= kClassicalFidelity) return FidelityClass::classical;
  if (f > kFidelityThreshold) return FidelityClass::above_threshold;
  return FidelityClass::nonclassical;
}

const char *to_string(FidelityClass c) {
  switch (c) {
    case FidelityClass::classical: return "classical";
    case FidelityClass::nonclassical: return "nonclassical";
    case FidelityClass::above_threshold: return "above_threshold";
  }
  return "?";
}

}  // namespace telebell::protocol
