#include "telebell/bellchsh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "telebell/protocol.hpp"

namespace telebell::chsh {

namespace {

void require_unit(const Vec3 &v, const char *name) {
  if (std::abs(la::norm(v) - 1.0) > 1e-10)
    throw std::invalid_argument(std::string("chsh: non-unit direction ") + name);
}

// For fixed Alice directions the bilinear form is linear in b and b', so
// the optimum over Bob's unit directions is |T^T a + T^T a'| + |T^T a - T^T a'|.
double best_over_bob(const Mat3 &t_transposed, const Vec3 &a, const Vec3 &a_prime) {
  const Vec3 ta = la::matvec(t_transposed, a);
  const Vec3 tap = la::matvec(t_transposed, a_prime);
  return la::norm(la::add(ta, tap)) + la::norm(la::sub(ta, tap));
}

double oracle_impl(const DensityOperator &d, int resolution, bool parallel) {
  if (resolution < 8) throw std::invalid_argument("beta_oracle: resolution must be >= 8");
  const CorrelationMatrix c = states::correlation_matrix(d);
  const Mat3 tt = la::transpose(c.t);

  const auto dirs = protocol::fibonacci_sphere(resolution * resolution);
  const int n = static_cast<int>(dirs.size());
  std::vector<double> row_best(n, 0.0);
  std::vector<int> row_arg(n, 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) {
    double best = -1.0;
    int arg = 0;
    for (int j = 0; j < n; ++j) {
      const double v = best_over_bob(tt, dirs[i], dirs[j]);
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    row_best[i] = best;
    row_arg[i] = arg;
  }
  double best = -1.0;
  Vec3 a{0, 0, 1}, ap{0, 0, 1};
  for (int i = 0; i < n; ++i)
    if (row_best[i] > best) {
      best = row_best[i];
      a = dirs[i];
      ap = dirs[row_arg[i]];
    }

  // Local hill climbing on the two Alice directions, spherical-angle
  // coordinate steps with a shrinking step size.
  auto to_angles = [](const Vec3 &v) {
    return std::array<double, 2>{std::acos(std::clamp(v[2], -1.0, 1.0)), std::atan2(v[1], v[0])};
  };
  auto from_angles = [](const std::array<double, 2> &ang) {
    return Vec3{std::sin(ang[0]) * std::cos(ang[1]), std::sin(ang[0]) * std::sin(ang[1]),
                std::cos(ang[0])};
  };
  std::array<double, 4> x{to_angles(a)[0], to_angles(a)[1], to_angles(ap)[0], to_angles(ap)[1]};
  auto eval = [&](const std::array<double, 4> &y) {
    return best_over_bob(tt, from_angles({y[0], y[1]}), from_angles({y[2], y[3]}));
  };
  double cur = eval(x);
  double step = 2.0 * M_PI / (resolution * resolution);
  for (int iter = 0; iter < 400 && step > 1e-10; ++iter) {
    bool improved = false;
    for (int k = 0; k < 4; ++k) {
      for (const double delta : {step, -step}) {
        std::array<double, 4> y = x;
        y[k] += delta;
        const double v = eval(y);
        if (v > cur) {
          cur = v;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return cur;
}

}  // namespace

double chsh_value(const CorrelationMatrix &c, const ChshSettings &s) {
  require_unit(s.a, "a");
  require_unit(s.a_prime, "a'");
  require_unit(s.b, "b");
  require_unit(s.b_prime, "b'");
  const Vec3 bp = la::add(s.b, s.b_prime);
  const Vec3 bm = la::sub(s.b, s.b_prime);
  return la::dot(s.a, la::matvec(c.t, bp)) + la::dot(s.a_prime, la::matvec(c.t, bm));
}

double chsh_value(const DensityOperator &d, const ChshSettings &s) {
  return chsh_value(states::correlation_matrix(d), s);
}

double beta_max(const CorrelationMatrix &c) {
  const auto u = la::symmetric3_eigenvalues(la::matmul(la::transpose(c.t), c.t));
  return 2.0 * std::sqrt(std::max(0.0, u[0] + u[1]));
}

double beta_max(const DensityOperator &d) {
  return beta_max(states::correlation_matrix(d));
}

double beta_oracle(const DensityOperator &d, int resolution) {
  return oracle_impl(d, resolution, true);
}

double beta_oracle_serial(const DensityOperator &d, int resolution) {
  return oracle_impl(d, resolution, false);
}

}  // namespace telebell::chsh
