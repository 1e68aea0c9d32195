// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: fidelity quadrature, the CHSH grid oracle and the
// teleportation-term optimizer.

#include <chrono>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "telebell/bellchsh.hpp"
#include "telebell/protocol.hpp"
#include "telebell/states.hpp"
#include "telebell/telebell.hpp"

using namespace telebell;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(const F &f, double *result) {
  const double t0 = now_seconds();
  *result = f();
  return now_seconds() - t0;
}

void report(const char *name, double parallel_s, double serial_s, double vp, double vs) {
  std::printf("%-24s parallel %8.3fs  serial %8.3fs  speedup %5.2fx  |diff| %.3g\n",
              name, parallel_s, serial_s, serial_s / parallel_s, std::abs(vp - vs));
}

}  // namespace

int main() {
  std::printf("omp max threads: %d\n", omp_get_max_threads());
  const states::DensityOperator d = states::d_lambda_alpha(0.7746, 0.8660);

  {
    protocol::QuadratureSpec quad;
    quad.points = 200000;
    double vp = 0, vs = 0;
    const double tp = timed([&] { return protocol::fidelity_average(d, protocol::standard_strategy(), quad); }, &vp);
    const double ts = timed([&] { return protocol::fidelity_average_serial(d, protocol::standard_strategy(), quad); }, &vs);
    report("fidelity_average", tp, ts, vp, vs);
  }

  {
    double vp = 0, vs = 0;
    const double tp = timed([&] { return chsh::beta_oracle(d, 96); }, &vp);
    const double ts = timed([&] { return chsh::beta_oracle_serial(d, 96); }, &vs);
    report("beta_oracle", tp, ts, vp, vs);
  }

  {
    tele::OptimizerConfig cfg;
    cfg.grid_resolution = 20;
    cfg.starts = 8;
    tele::OptimizerConfig serial_cfg = cfg;
    serial_cfg.parallel = false;
    double vp = 0, vs = 0;
    const double tp = timed([&] { return tele::tau_max(d, cfg).tau_raw; }, &vp);
    const double ts = timed([&] { return tele::tau_max(d, serial_cfg).tau_raw; }, &vs);
    report("tau_max", tp, ts, vp, vs);
  }

  return 0;
}
