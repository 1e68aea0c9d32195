#pragma once

// Simulation of the standard teleportation protocol: Bell measurement on
// qubits 1+2, outcome-conditioned correction on qubit 3, and transmission
// fidelity by direct averaging and by the correlation-matrix closed form.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "telebell/states.hpp"

namespace telebell::protocol {

using la::ComplexMatrix;
using la::Mat3;
using la::Vec3;
using states::CorrelationMatrix;
using states::DensityOperator;
using states::PureQubitState;

constexpr double kClassicalFidelity = 2.0 / 3.0;
// 2/3 (1 + 1/(2 sqrt 2)); fidelities above this force a teleportation-
// inequality violation.
inline const double kFidelityThreshold = 2.0 / 3.0 + std::sqrt(2.0) / 6.0;

struct Strategy {
  // u[n-1] is the correction applied after outcome n.
  std::array<ComplexMatrix, 4> u;
};

// n=1 -> I, n=2 -> sigma_x, n=3 -> sigma_y, n=4 -> sigma_z, matching the
// Bell-outcome index convention in states::bell_index_from_outcome.
Strategy standard_strategy();

struct MeasurementOutcome {
  int n = 0;
  double probability = 0.0;
  ComplexMatrix post_state;       // qubit-3 density matrix before correction
  bool post_state_defined = false;  // false when the outcome has probability 0
};

std::array<MeasurementOutcome, 4> bell_measure(const PureQubitState &phi,
                                               const DensityOperator &d);

double fidelity_for_state(const PureQubitState &phi, const DensityOperator &d,
                          const Strategy &s);

struct QuadratureSpec {
  enum class Kind { fibonacci_grid, monte_carlo };
  Kind kind = Kind::fibonacci_grid;
  int points = 2048;
  std::uint64_t seed = 0;  // monte_carlo only
};

// Bloch-sphere-uniform average of fidelity_for_state. Deterministic given
// the spec; the sample loop is OpenMP-parallel with a fixed-order reduction.
double fidelity_average(const DensityOperator &d, const Strategy &s,
                        const QuadratureSpec &quad = {});

// Serial reference for the parallel kernel above; bit-identical results.
double fidelity_average_serial(const DensityOperator &d, const Strategy &s,
                               const QuadratureSpec &quad = {});

// 1/2 - (T_xx + T_yy + T_zz)/6, the closed form for the standard strategy.
double fidelity_standard_closed(const DensityOperator &d);
double fidelity_standard_closed(const CorrelationMatrix &c);

// The sign matrices attached to the four outcomes: outcome_t[n-1] describes
// the Bell-state correlation pattern, correction_o[n-1] the rotation that
// the standard correction U_n induces on Bloch vectors
// (U_n (b.sigma) U_n^-1 = (O_n^T b).sigma).
struct RotationTriple {
  std::array<Mat3, 4> outcome_t;
  std::array<Mat3, 4> correction_o;
};

RotationTriple standard_rotation_triples();

// Fidelity through the sign-matrix pathway
// 1/8 sum_n (1 + 1/3 Tr[T_n^T T(D) O_n]); agrees with the closed form.
double fidelity_rotation_form(const DensityOperator &d);

enum class FidelityClass { classical, nonclassical, above_threshold };

// classical iff f <= 2/3; above_threshold iff f > 2/3 + sqrt(2)/6.
FidelityClass classify_fidelity(double f);

const char *to_string(FidelityClass c);

// Deterministic quasi-uniform unit vectors (Fibonacci spiral), used by the
// quadrature and by grid oracles elsewhere.
std::vector<Vec3> fibonacci_sphere(int n);

}  // namespace telebell::protocol
