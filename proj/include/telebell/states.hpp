#pragma once

// Constructors and validators for the states and operators the analysis
// consumes: Pauli and spin-component observables, the Bell basis, the
// channel-state families (Werner, two-parameter noisy pure family), and
// extraction of correlation data (T matrix plus local Bloch vectors).

#include <cstdint>
#include <string>

#include "telebell/qlinalg.hpp"

namespace telebell::states {

using la::ComplexMatrix;
using la::cplx;
using la::Mat3;
using la::Vec3;

enum class Axis { x, y, z };

ComplexMatrix pauli(Axis axis);

// n . sigma for a unit direction n. Throws for non-unit input.
ComplexMatrix spin_component(const Vec3 &n);

struct PureQubitState {
  std::array<cplx, 2> amplitudes;

  ComplexMatrix ket() const { return la::ket({amplitudes[0], amplitudes[1]}); }
  ComplexMatrix projector() const;
  double norm() const;
};

// sin(theta)|up> + cos(theta) e^{i vartheta}|down>.
PureQubitState unknown_state(double theta, double vartheta);

// The +1 eigenstate of n.sigma for a unit Bloch vector n.
PureQubitState bloch_state(const Vec3 &n);

// Bell-basis outcome labels. The index pairing (1 <-> Psi-, 2 <-> Phi-,
// 3 <-> Phi+, 4 <-> Psi+) is the convention every other module inherits.
enum class BellIndex : int { PsiMinus = 1, PhiMinus = 2, PhiPlus = 3, PsiPlus = 4 };

ComplexMatrix bell_ket(BellIndex which);        // 4x1 column
ComplexMatrix bell_projector(BellIndex which);  // 4x4
BellIndex bell_index_from_outcome(int n);       // n in 1..4

class DensityOperator {
public:
  // Validates Hermiticity (1e-10), unit trace (1e-10) and positivity
  // (min eigenvalue >= -1e-9); throws std::invalid_argument otherwise.
  explicit DensityOperator(ComplexMatrix m);

  const ComplexMatrix &matrix() const { return m_; }

private:
  ComplexMatrix m_;
};

DensityOperator werner_state();

// alpha|+>|+> + sqrt(1-alpha^2)|->|->, a 4x1 column. alpha in [0,1].
ComplexMatrix psi_alpha(double alpha);

// The single-qubit |+> / |-> kets entering psi_alpha.
ComplexMatrix plus_minus_ket(int sign);  // sign = +1 or -1

// (1-lambda)/4 I + lambda |psi_alpha><psi_alpha|. Both parameters in [0,1].
DensityOperator d_lambda_alpha(double lambda, double alpha);

struct CorrelationMatrix {
  Mat3 t;        // t[m][n] = Tr[D (sigma_m x sigma_n)]
  Vec3 bloch_a;  // Tr[D (sigma_n x I)], Alice side (qubit 2)
  Vec3 bloch_b;  // Tr[D (I x sigma_n)], Bob side (qubit 3)
};

CorrelationMatrix correlation_matrix(const DensityOperator &d);

// Seeded induced-measure sample: D = G G^dag / Tr(G G^dag) with G a complex
// Gaussian 4 x rank matrix. Deterministic in the seed.
DensityOperator random_density(std::uint64_t seed, int rank);

}  // namespace telebell::states
