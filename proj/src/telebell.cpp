#include "telebell/telebell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "telebell/protocol.hpp"

namespace telebell::tele {

using states::Axis;
using states::BellIndex;

const char *to_string(AssignmentClass c) {
  switch (c) {
    case AssignmentClass::I: return "I";
    case AssignmentClass::II: return "II";
    case AssignmentClass::III: return "III";
    case AssignmentClass::degenerate: return "degenerate";
  }
  return "?";
}

AssignmentClass classify(const BivalentAssignment &first, const BivalentAssignment &second) {
  if (first.degenerate() || second.degenerate()) return AssignmentClass::degenerate;
  const int balanced = first.balanced() + second.balanced();
  if (balanced == 2) return AssignmentClass::I;
  if (balanced == 1) return AssignmentClass::II;
  return AssignmentClass::III;
}

ComplexMatrix bivalent_observable(const BivalentAssignment &s) {
  ComplexMatrix m(4, 4);
  m += static_cast<double>(s.a) * states::bell_projector(BellIndex::PsiPlus);
  m += static_cast<double>(s.b) * states::bell_projector(BellIndex::PsiMinus);
  m += static_cast<double>(s.c) * states::bell_projector(BellIndex::PhiPlus);
  m += static_cast<double>(s.d) * states::bell_projector(BellIndex::PhiMinus);
  return m;
}

ContractionBloch contraction_bloch(const BivalentAssignment &s, double theta, double vartheta) {
  ContractionBloch cb;
  cb.x0 = 0.25 * (s.a + s.b + s.c + s.d);
  const double s2t = std::sin(2.0 * theta);
  const double c2t = std::cos(2.0 * theta);
  cb.x[0] = 0.25 * (s.a - s.b + s.c - s.d) * s2t * std::cos(vartheta);
  cb.x[1] = 0.25 * (s.a + s.d - s.b - s.c) * s2t * std::sin(vartheta);
  cb.x[2] = 0.25 * (s.a + s.b - s.c - s.d) * c2t;
  return cb;
}

ComplexMatrix contraction_matrix(const ContractionBloch &cb) {
  ComplexMatrix m = ComplexMatrix::identity(2);
  m *= cb.x0;
  m += cb.x[0] * states::pauli(Axis::x);
  m += cb.x[1] * states::pauli(Axis::y);
  m += cb.x[2] * states::pauli(Axis::z);
  return m;
}

ComplexMatrix contraction_x(const BivalentAssignment &s, double theta, double vartheta) {
  return contraction_matrix(contraction_bloch(s, theta, vartheta));
}

ComplexMatrix contraction_x_oracle(const BivalentAssignment &s, const PureQubitState &phi) {
  const ComplexMatrix a = bivalent_observable(s);
  ComplexMatrix x(2, 2);
  for (int v = 0; v < 2; ++v)
    for (int w = 0; w < 2; ++w) {
      la::cplx sum = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          sum += std::conj(phi.amplitudes[p]) * a(2 * p + v, 2 * q + w) * phi.amplitudes[q];
      x(v, w) = sum;
    }
  return x;
}

namespace {

double expectation(const ComplexMatrix &rho, const ComplexMatrix &obs) {
  return (rho * obs).trace().real();
}

ContractionBloch bloch_decompose(const ComplexMatrix &x) {
  if (x.rows() != 2 || x.cols() != 2 || !x.is_hermitian(1e-10))
    throw std::invalid_argument("inner_max_over_bob: contraction must be 2x2 self-adjoint");
  ContractionBloch cb;
  cb.x0 = 0.5 * x.trace().real();
  cb.x[0] = x(0, 1).real();
  cb.x[1] = -x(0, 1).imag();
  cb.x[2] = 0.5 * (x(0, 0) - x(1, 1)).real();
  if (std::abs(cb.x0) + la::norm(cb.x) > 1.0 + 1e-9)
    throw std::invalid_argument("inner_max_over_bob: operator norm exceeds 1");
  return cb;
}

Vec3 safe_direction(const Vec3 &v) {
  const double n = la::norm(v);
  if (n < 1e-12) return {0.0, 0.0, 1.0};
  return la::scale(1.0 / n, v);
}

}  // namespace

double tele_value(const DensityOperator &d, const TeleSettings &ts) {
  const ComplexMatrix a1 = bivalent_observable(ts.assignment_1);
  const ComplexMatrix a2 = bivalent_observable(ts.assignment_2);
  const ComplexMatrix s1 = states::spin_component(ts.bob_1);
  const ComplexMatrix s2 = states::spin_component(ts.bob_2);
  const ComplexMatrix rho1 =
      la::kron(states::unknown_state(ts.theta_1, ts.vartheta_1).projector(), d.matrix());
  const ComplexMatrix rho2 =
      la::kron(states::unknown_state(ts.theta_2, ts.vartheta_2).projector(), d.matrix());
  const double v = expectation(rho1, la::kron(a1, s1)) + expectation(rho1, la::kron(a1, s2)) +
                   expectation(rho2, la::kron(a2, s1)) - expectation(rho2, la::kron(a2, s2));
  return std::abs(v);
}

double tele_value_contracted(const DensityOperator &d, const TeleSettings &ts) {
  const ComplexMatrix x1 = contraction_x(ts.assignment_1, ts.theta_1, ts.vartheta_1);
  const ComplexMatrix x2 = contraction_x(ts.assignment_2, ts.theta_2, ts.vartheta_2);
  const ComplexMatrix s1 = states::spin_component(ts.bob_1);
  const ComplexMatrix s2 = states::spin_component(ts.bob_2);
  const double v = expectation(d.matrix(), la::kron(x1, s1 + s2)) +
                   expectation(d.matrix(), la::kron(x2, s1 - s2));
  return std::abs(v);
}

InnerMax inner_max_over_bob(const CorrelationMatrix &c, const ContractionBloch &x1,
                            const ContractionBloch &x2) {
  const la::Mat3 tt = la::transpose(c.t);
  const Vec3 r1 = la::add(la::scale(x1.x0, c.bloch_b), la::matvec(tt, x1.x));
  const Vec3 r2 = la::add(la::scale(x2.x0, c.bloch_b), la::matvec(tt, x2.x));
  const Vec3 sum = la::add(r1, r2);
  const Vec3 diff = la::sub(r1, r2);
  InnerMax im;
  im.value = la::norm(sum) + la::norm(diff);
  im.bob_1 = safe_direction(sum);
  im.bob_2 = safe_direction(diff);
  return im;
}

InnerMax inner_max_over_bob(const DensityOperator &d, const ComplexMatrix &x1,
                            const ComplexMatrix &x2) {
  return inner_max_over_bob(states::correlation_matrix(d), bloch_decompose(x1),
                            bloch_decompose(x2));
}

std::vector<BivalentAssignment> nondegenerate_assignments() {
  std::vector<BivalentAssignment> out;
  for (int mask = 0; mask < 16; ++mask) {
    BivalentAssignment s{mask & 8 ? 1 : -1, mask & 4 ? 1 : -1, mask & 2 ? 1 : -1,
                         mask & 1 ? 1 : -1};
    if (!s.degenerate()) out.push_back(s);
  }
  return out;
}

std::vector<BivalentAssignment> assignment_representatives() {
  // Negating an observable's signs only flips the sign of its correlators,
  // which the absolute value and the exact Bob step absorb; keep one
  // representative per sign-flip orbit.
  std::vector<BivalentAssignment> out;
  for (const BivalentAssignment &s : nondegenerate_assignments()) {
    const bool canonical = s.plus_count() > 2 || (s.plus_count() == 2 && s.a == 1);
    if (canonical) out.push_back(s);
  }
  return out;
}

namespace {

int class_slot(AssignmentClass c) {
  switch (c) {
    case AssignmentClass::I: return 0;
    case AssignmentClass::II: return 1;
    case AssignmentClass::III: return 2;
    default: return -1;
  }
}

struct PairBest {
  double value = -1.0;
  std::array<double, 4> angles{};  // theta_1, vartheta_1, theta_2, vartheta_2
  bool converged = true;
};

// Quasi-random starts from the 4-dimensional additive recurrence with the
// root of x^5 = x + 1.
std::array<double, 4> quasi_start(int k) {
  constexpr double g = 1.1673039782614187;  // positive root of x^5 = x + 1
  std::array<double, 4> s{};
  double a = 1.0;
  for (int d = 0; d < 4; ++d) {
    a /= g;
    double v = 0.5 + (k + 1) * a;
    s[d] = 2.0 * M_PI * (v - std::floor(v));
  }
  return s;
}

TauResult tau_search(const DensityOperator &d, const OptimizerConfig &cfg,
                     const std::vector<BivalentAssignment> &assignments) {
  const CorrelationMatrix corr = states::correlation_matrix(d);

  struct Pair {
    BivalentAssignment first, second;
    AssignmentClass cls;
  };
  std::vector<Pair> pairs;
  for (const BivalentAssignment &p : assignments)
    for (const BivalentAssignment &q : assignments) {
      const AssignmentClass cls = classify(p, q);
      if (cls == AssignmentClass::degenerate) continue;
      if (cfg.restrict_class && cls != *cfg.restrict_class) continue;
      pairs.push_back({p, q, cls});
    }

  auto r_vector = [&corr](const BivalentAssignment &s, double theta, double vartheta) {
    const ContractionBloch cb = contraction_bloch(s, theta, vartheta);
    return la::add(la::scale(cb.x0, corr.bloch_b),
                   la::matvec(la::transpose(corr.t), cb.x));
  };

  // Angle-grid floor. r depends on one assignment and one (theta, vartheta)
  // pair, so precompute per assignment and combine pairwise.
  const int res = std::max(2, cfg.grid_resolution);
  const int cells = res * res;
  const double step = 2.0 * M_PI / res;
  std::vector<std::vector<Vec3>> pre(assignments.size(), std::vector<Vec3>(cells));
  for (size_t s = 0; s < assignments.size(); ++s)
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j)
        pre[s][i * res + j] = r_vector(assignments[s], i * step, j * step);

  auto assignment_index = [&assignments](const BivalentAssignment &s) {
    return static_cast<size_t>(
        std::find(assignments.begin(), assignments.end(), s) - assignments.begin());
  };

  const int npairs = static_cast<int>(pairs.size());
  std::vector<PairBest> best(npairs);

#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
  for (int pi = 0; pi < npairs; ++pi) {
    const Pair &pair = pairs[pi];
    const auto &ra = pre[assignment_index(pair.first)];
    const auto &rb = pre[assignment_index(pair.second)];

    // Grid floor, deterministic first-hit tie break.
    double grid_best = -1.0;
    int grid_i = 0, grid_j = 0;
    for (int i = 0; i < cells; ++i) {
      const Vec3 &r1 = ra[i];
      for (int j = 0; j < cells; ++j) {
        const Vec3 &r2 = rb[j];
        const double v = la::norm(la::add(r1, r2)) + la::norm(la::sub(r1, r2));
        if (v > grid_best) {
          grid_best = v;
          grid_i = i;
          grid_j = j;
        }
      }
    }

    auto objective = [&](const std::array<double, 4> &x) {
      const Vec3 r1 = r_vector(pair.first, x[0], x[1]);
      const Vec3 r2 = r_vector(pair.second, x[2], x[3]);
      return la::norm(la::add(r1, r2)) + la::norm(la::sub(r1, r2));
    };

    PairBest pb;
    pb.value = grid_best;
    pb.angles = {(grid_i / res) * step, (grid_i % res) * step,
                 (grid_j / res) * step, (grid_j % res) * step};

    // Multistart coordinate search: quasi-random starts plus the grid argmax.
    for (int start = -1; start < cfg.starts; ++start) {
      std::array<double, 4> x = start < 0 ? pb.angles : quasi_start(start);
      double cur = objective(x);
      double h = M_PI / 8.0;
      int iter = 0;
      while (h > cfg.step_tolerance && iter < cfg.max_iterations) {
        bool improved = false;
        for (int k = 0; k < 4; ++k)
          for (const double delta : {h, -h}) {
            std::array<double, 4> y = x;
            y[k] += delta;
            const double v = objective(y);
            if (v > cur) {
              cur = v;
              x = y;
              improved = true;
            }
          }
        if (!improved) h *= 0.5;
        ++iter;
      }
      if (h > cfg.step_tolerance) pb.converged = false;
      if (cur > pb.value) {
        pb.value = cur;
        pb.angles = x;
      }
    }
    best[pi] = pb;
  }

  TauResult result;
  result.lower_bound = tau_lower_bound(corr);
  int arg_pair = -1;
  for (int pi = 0; pi < npairs; ++pi) {
    const int slot = class_slot(pairs[pi].cls);
    if (slot >= 0) result.per_class_max[slot] = std::max(result.per_class_max[slot], best[pi].value);
    result.converged = result.converged && best[pi].converged;
    if (best[pi].value > result.tau_raw) {
      result.tau_raw = best[pi].value;
      arg_pair = pi;
    }
  }
  if (arg_pair >= 0) {
    const Pair &pair = pairs[arg_pair];
    const auto &x = best[arg_pair].angles;
    auto wrap = [](double a) {
      const double t = std::fmod(a, 2.0 * M_PI);
      return t < 0.0 ? t + 2.0 * M_PI : t;
    };
    TeleSettings ts;
    ts.assignment_1 = pair.first;
    ts.assignment_2 = pair.second;
    ts.theta_1 = wrap(x[0]);
    ts.vartheta_1 = wrap(x[1]);
    ts.theta_2 = wrap(x[2]);
    ts.vartheta_2 = wrap(x[3]);
    const InnerMax im = inner_max_over_bob(corr, contraction_bloch(pair.first, x[0], x[1]),
                                           contraction_bloch(pair.second, x[2], x[3]));
    ts.bob_1 = im.bob_1;
    ts.bob_2 = im.bob_2;
    result.argmax = ts;
  }
  return result;
}

}  // namespace

TauResult tau_max(const DensityOperator &d, const OptimizerConfig &cfg) {
  return tau_search(d, cfg, assignment_representatives());
}

TauResult tau_max_unreduced(const DensityOperator &d, const OptimizerConfig &cfg) {
  return tau_search(d, cfg, nondegenerate_assignments());
}

double tau_lower_bound(const CorrelationMatrix &c) {
  return std::sqrt(2.0) * std::abs(c.t[0][0] + c.t[1][1]);
}

double tau_lower_bound(const DensityOperator &d) {
  return tau_lower_bound(states::correlation_matrix(d));
}

namespace {

void require_unit_interval(double v, const char *name) {
  if (v < 0.0 || v > 1.0)
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

bool condition_bell(double lambda, double alpha) {
  require_unit_interval(lambda, "lambda");
  require_unit_interval(alpha, "alpha");
  const double k = alpha * alpha * (1.0 - alpha * alpha);
  return lambda * std::sqrt(1.0 + 4.0 * k) > 1.0;
}

bool condition_class1(double lambda, double alpha) {
  require_unit_interval(lambda, "lambda");
  require_unit_interval(alpha, "alpha");
  const double k = alpha * alpha * (1.0 - alpha * alpha);
  // Nonstrict bound; the tolerance admits exact-boundary points that land a
  // few ulp above 1 in floating point.
  return lambda * std::sqrt(2.0 / 3.0 * (1.0 + 8.0 * k)) <= 1.0 + 1e-12;
}

bool condition_class23(double lambda, double alpha) {
  require_unit_interval(lambda, "lambda");
  require_unit_interval(alpha, "alpha");
  const double k = alpha * alpha * (1.0 - alpha * alpha);
  return lambda * (std::sqrt(2.0 * (1.0 - 2.0 * k)) + std::sqrt(1.0 + 4.0 * k)) <= 2.0 + 1e-12;
}

ThresholdCheck threshold_check(const DensityOperator &d) {
  const CorrelationMatrix c = states::correlation_matrix(d);
  ThresholdCheck tc;
  tc.f_st = protocol::fidelity_standard_closed(c);
  tc.bound_value = std::sqrt(2.0) * std::abs(c.t[2][2] + 6.0 * tc.f_st - 3.0);
  tc.implies_violation = tc.f_st > protocol::kFidelityThreshold;
  return tc;
}

}  // namespace telebell::tele
