#pragma once

// Bell-teleportation-inequality machinery: bivalent coarse-grainings of the
// Bell operator, their single-qubit contractions against the unknown state,
// the tau maximization over assignments / unknown-state angles / Bob
// directions, the sign-class sufficient conditions for the two-parameter
// channel family, and the fidelity threshold check.

#include <optional>
#include <vector>

#include "telebell/bellchsh.hpp"
#include "telebell/states.hpp"

namespace telebell::tele {

using la::ComplexMatrix;
using la::Vec3;
using states::CorrelationMatrix;
using states::DensityOperator;
using states::PureQubitState;

// Signs attached to the Bell eigenspaces, in the order
// (Psi+, Psi-, Phi+, Phi-).
struct BivalentAssignment {
  int a = 1, b = 1, c = 1, d = 1;

  bool degenerate() const { return a == b && b == c && c == d; }
  int plus_count() const { return (a > 0) + (b > 0) + (c > 0) + (d > 0); }
  // true for a 2-2 sign split, false for 3-1 (call only on non-degenerate).
  bool balanced() const { return plus_count() == 2; }
  BivalentAssignment negated() const { return {-a, -b, -c, -d}; }
  bool operator==(const BivalentAssignment &) const = default;
};

enum class AssignmentClass { I, II, III, degenerate };

const char *to_string(AssignmentClass c);

AssignmentClass classify(const BivalentAssignment &first, const BivalentAssignment &second);

// a|Psi+><Psi+| + b|Psi-><Psi-| + c|Phi+><Phi+| + d|Phi-><Phi-|; a 4x4
// self-adjoint unitary.
ComplexMatrix bivalent_observable(const BivalentAssignment &s);

// Bloch decomposition x0 I + x.sigma of the contraction of a bivalent
// observable against the unknown state with angles (theta, vartheta).
struct ContractionBloch {
  double x0 = 0.0;
  Vec3 x{0.0, 0.0, 0.0};
};

ContractionBloch contraction_bloch(const BivalentAssignment &s, double theta, double vartheta);

// The contraction as a 2x2 matrix, from the trigonometric expansion.
ComplexMatrix contraction_x(const BivalentAssignment &s, double theta, double vartheta);

// x0 I + x.sigma as a 2x2 matrix.
ComplexMatrix contraction_matrix(const ContractionBloch &cb);

// Independent route: X = (<phi| x I) A (|phi> x I), taking matrix elements
// of the 4x4 observable against the unknown state directly.
ComplexMatrix contraction_x_oracle(const BivalentAssignment &s, const PureQubitState &phi);

struct TeleSettings {
  BivalentAssignment assignment_1, assignment_2;
  double theta_1 = 0.0, vartheta_1 = 0.0;
  double theta_2 = 0.0, vartheta_2 = 0.0;
  Vec3 bob_1{0.0, 0.0, 1.0}, bob_2{0.0, 0.0, 1.0};
};

// |<A1 x s1> + <A1 x s2> + <A2 x s1> - <A2 x s2>| with the first two
// expectations taken in |phi_1><phi_1| x D and the last two in
// |phi_2><phi_2| x D, evaluated on the full three-qubit space.
double tele_value(const DensityOperator &d, const TeleSettings &ts);

// Same quantity through the contraction route:
// |<X1 x (s1+s2) + X2 x (s1-s2)>_D|. Agrees with tele_value to 1e-12.
double tele_value_contracted(const DensityOperator &d, const TeleSettings &ts);

struct InnerMax {
  double value = 0.0;
  Vec3 bob_1{0.0, 0.0, 1.0}, bob_2{0.0, 0.0, 1.0};
};

// Exact maximum of the four-term combination over Bob's two unit directions
// for fixed contractions X_j = x0 I + x.sigma: with r_j = x0_j s + T^T x_j
// (s the Bob-side Bloch vector) it equals |r1+r2| + |r1-r2|.
InnerMax inner_max_over_bob(const CorrelationMatrix &c, const ContractionBloch &x1,
                            const ContractionBloch &x2);
InnerMax inner_max_over_bob(const DensityOperator &d, const ComplexMatrix &x1,
                            const ComplexMatrix &x2);

struct OptimizerConfig {
  int starts = 16;            // quasi-random multistart points per assignment pair
  int max_iterations = 400;   // coordinate-search iteration cap per start
  double step_tolerance = 1e-7;
  int grid_resolution = 24;   // angle-grid floor, per angle
  std::optional<AssignmentClass> restrict_class;  // search only pairs of this class
  bool parallel = true;
};

struct TauResult {
  double tau_raw = 0.0;
  TeleSettings argmax;
  double lower_bound = 0.0;
  // Best value seen over pairs of each class (I, II, III); -1 if the class
  // was excluded from the search.
  std::array<double, 3> per_class_max{-1.0, -1.0, -1.0};
  bool converged = true;  // false if any refinement hit the iteration cap
};

// Maximum of the teleportation expression over non-degenerate assignment
// pairs (reduced by per-observable sign flips), unknown-state angles
// (multistart coordinate search over an angle-grid floor) and Bob
// directions (exact inner step).
TauResult tau_max(const DensityOperator &d, const OptimizerConfig &cfg = {});

// Unreduced variant used to validate the symmetry reduction: searches all
// 14 x 14 non-degenerate ordered pairs.
TauResult tau_max_unreduced(const DensityOperator &d, const OptimizerConfig &cfg = {});

// sqrt(2) |T_xx + T_yy|.
double tau_lower_bound(const DensityOperator &d);
double tau_lower_bound(const CorrelationMatrix &c);

// Channel-family conditions on (lambda, alpha), both in [0,1].
bool condition_bell(double lambda, double alpha);      // lam sqrt(1+4a^2(1-a^2)) > 1
bool condition_class1(double lambda, double alpha);    // lam sqrt(2/3(1+8a^2(1-a^2))) <= 1
bool condition_class23(double lambda, double alpha);   // lam (sqrt(2(1-2a^2(1-a^2))) + sqrt(1+4a^2(1-a^2))) <= 2

struct ThresholdCheck {
  double f_st = 0.0;
  double bound_value = 0.0;     // sqrt(2) |T_zz + 6 f_st - 3|
  bool implies_violation = false;  // f_st > 2/3 + sqrt(2)/6
};

ThresholdCheck threshold_check(const DensityOperator &d);

// The 7 sign-flip representatives of the 14 non-degenerate assignments.
std::vector<BivalentAssignment> assignment_representatives();
// All 14 non-degenerate assignments.
std::vector<BivalentAssignment> nondegenerate_assignments();

}  // namespace telebell::tele
