#pragma once

// Bell-CHSH maximum for the channel state: exact value from the two largest
// eigenvalues of T^T T, with an independent direction-grid oracle.

#include "telebell/states.hpp"

namespace telebell::chsh {

using la::Mat3;
using la::Vec3;
using states::CorrelationMatrix;
using states::DensityOperator;

struct ChshSettings {
  Vec3 a, a_prime;   // Alice-side directions (qubit 2)
  Vec3 b, b_prime;   // Bob-side directions (qubit 3)
};

// a.T(b+b') + a'.T(b-b'). Throws for non-unit directions.
double chsh_value(const DensityOperator &d, const ChshSettings &s);
double chsh_value(const CorrelationMatrix &c, const ChshSettings &s);

// 2 sqrt(u1+u2) with u1 >= u2 the two largest eigenvalues of T^T T.
double beta_max(const DensityOperator &d);
double beta_max(const CorrelationMatrix &c);

// Grid search over Alice directions (Bob's side maximized in closed form
// from the bilinear expression) refined by local hill climbing. Built only
// from chsh_value's bilinear form, independent of the eigenvalue route.
double beta_oracle(const DensityOperator &d, int resolution);
double beta_oracle_serial(const DensityOperator &d, int resolution);

}  // namespace telebell::chsh
