#include "telebell/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "telebell/bellchsh.hpp"

namespace telebell::report {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> tokenize(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

double parse_double(const std::string &s, const char *what) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    throw ParseError(std::string("cannot parse ") + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw ParseError(std::string("trailing junk in ") + what + ": '" + s + "'");
  return v;
}

states::DensityOperator state_from_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file: " + path);
  la::ComplexMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double re, im;
      if (!(in >> re >> im))
        throw ParseError("state file must contain 16 're im' lines, row-major: " + path);
      m(i, j) = la::cplx(re, im);
    }
  return states::DensityOperator(std::move(m));
}

}  // namespace

ParsedState parse_state_spec(const std::string &spec) {
  const auto tokens = tokenize(spec);
  if (tokens.empty()) throw ParseError("empty state spec");

  if (tokens[0] == "werner") {
    if (tokens.size() != 1) throw ParseError("werner takes no parameters");
    return {states::werner_state(), "werner", std::nullopt};
  }
  if (tokens[0] == "d_lambda_alpha") {
    if (tokens.size() != 3) throw ParseError("usage: d_lambda_alpha <lambda> <alpha>");
    const double l = parse_double(tokens[1], "lambda");
    const double a = parse_double(tokens[2], "alpha");
    // Out-of-range parameters fall through to states::d_lambda_alpha, which
    // reports them as domain errors rather than parse errors.
    return {states::d_lambda_alpha(l, a),
            "d_lambda_alpha " + fmt17(l) + " " + fmt17(a),
            std::make_pair(l, a)};
  }
  if (tokens[0] == "bell") {
    if (tokens.size() != 2) throw ParseError("usage: bell Phi+|Phi-|Psi+|Psi-");
    states::BellIndex which;
    if (tokens[1] == "Phi+") which = states::BellIndex::PhiPlus;
    else if (tokens[1] == "Phi-") which = states::BellIndex::PhiMinus;
    else if (tokens[1] == "Psi+") which = states::BellIndex::PsiPlus;
    else if (tokens[1] == "Psi-") which = states::BellIndex::PsiMinus;
    else throw ParseError("unknown Bell state: " + tokens[1]);
    return {states::DensityOperator(states::bell_projector(which)), "bell " + tokens[1],
            std::nullopt};
  }
  if (tokens.size() == 1) return {state_from_file(tokens[0]), tokens[0], std::nullopt};
  throw ParseError("unrecognized state spec: " + spec);
}

AnalysisReport analyze(const ParsedState &ps, const tele::OptimizerConfig &cfg) {
  AnalysisReport r;
  r.descriptor = ps.descriptor;
  r.beta = chsh::beta_max(ps.state);
  const tele::TauResult tau = tele::tau_max(ps.state, cfg);
  r.tau_raw = tau.tau_raw;
  r.tau_lower_bound = tau.lower_bound;
  r.argmax = tau.argmax;
  r.f_st = protocol::fidelity_standard_closed(ps.state);
  r.fidelity_class = protocol::classify_fidelity(r.f_st);
  if (ps.lambda_alpha) {
    const auto [l, a] = *ps.lambda_alpha;
    r.conditions = {{tele::condition_bell(l, a), tele::condition_class1(l, a),
                     tele::condition_class23(l, a)}};
  }
  r.config = cfg;
  return r;
}

namespace {

std::string json_signs(const tele::BivalentAssignment &s) {
  std::ostringstream o;
  o << "[" << s.a << ", " << s.b << ", " << s.c << ", " << s.d << "]";
  return o.str();
}

std::string json_vec3(const la::Vec3 &v) {
  return "[" + fmt17(v[0]) + ", " + fmt17(v[1]) + ", " + fmt17(v[2]) + "]";
}

}  // namespace

std::string to_json(const AnalysisReport &r) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"state\": \"" << r.descriptor << "\",\n";
  o << "  \"beta\": " << fmt17(r.beta) << ",\n";
  o << "  \"tau_raw\": " << fmt17(r.tau_raw) << ",\n";
  o << "  \"tau_lower_bound\": " << fmt17(r.tau_lower_bound) << ",\n";
  o << "  \"f_st\": " << fmt17(r.f_st) << ",\n";
  o << "  \"fidelity_class\": \"" << protocol::to_string(r.fidelity_class) << "\",\n";
  if (r.conditions) {
    const auto &c = *r.conditions;
    o << "  \"conditions\": {\"bell\": " << (c[0] ? "true" : "false")
      << ", \"class1\": " << (c[1] ? "true" : "false")
      << ", \"class23\": " << (c[2] ? "true" : "false") << "},\n";
  }
  o << "  \"argmax\": {\n";
  o << "    \"assignment_1\": " << json_signs(r.argmax.assignment_1) << ",\n";
  o << "    \"assignment_2\": " << json_signs(r.argmax.assignment_2) << ",\n";
  o << "    \"theta_1\": " << fmt17(r.argmax.theta_1) << ",\n";
  o << "    \"vartheta_1\": " << fmt17(r.argmax.vartheta_1) << ",\n";
  o << "    \"theta_2\": " << fmt17(r.argmax.theta_2) << ",\n";
  o << "    \"vartheta_2\": " << fmt17(r.argmax.vartheta_2) << ",\n";
  o << "    \"bob_1\": " << json_vec3(r.argmax.bob_1) << ",\n";
  o << "    \"bob_2\": " << json_vec3(r.argmax.bob_2) << "\n";
  o << "  },\n";
  o << "  \"optimizer\": {\"starts\": " << r.config.starts
    << ", \"max_iterations\": " << r.config.max_iterations
    << ", \"step_tolerance\": " << fmt17(r.config.step_tolerance)
    << ", \"grid_resolution\": " << r.config.grid_resolution << "},\n";
  o << "  \"version\": \"" << kToolVersion << "\"\n";
  o << "}\n";
  return o.str();
}

std::vector<double> GridSpec::values() const {
  if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
  if (lo < 0.0 || hi > 1.0 || lo > hi) throw std::invalid_argument("grid bounds must satisfy 0 <= lo <= hi <= 1");
  std::vector<double> v;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) v.push_back(lo + i * step);
  return v;
}

std::vector<ScanRecord> scan(const GridSpec &lambda_grid, const GridSpec &alpha_grid,
                             const tele::OptimizerConfig &cfg) {
  const std::vector<double> lambdas = lambda_grid.values();
  const std::vector<double> alphas = alpha_grid.values();
  const int n = static_cast<int>(lambdas.size() * alphas.size());
  std::vector<ScanRecord> records(n);

  // Each grid point is an independent job; the record array keeps grid
  // (lambda-major) order whatever the completion order.
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
  for (int k = 0; k < n; ++k) {
    const double l = lambdas[k / alphas.size()];
    const double a = alphas[k % alphas.size()];
    const states::DensityOperator d = states::d_lambda_alpha(l, a);
    tele::OptimizerConfig point_cfg = cfg;
    point_cfg.parallel = false;  // parallelism lives at the grid level here
    ScanRecord rec;
    rec.lambda = l;
    rec.alpha = a;
    rec.beta = chsh::beta_max(d);
    rec.tau_raw = tele::tau_max(d, point_cfg).tau_raw;
    rec.f_st = protocol::fidelity_standard_closed(d);
    rec.bell_violating = rec.beta > 2.0;
    rec.tele_violating = rec.tau_raw > 2.0 + 1e-6;
    rec.nonclassical_fidelity = rec.f_st > protocol::kClassicalFidelity;
    rec.in_paper_region = tele::condition_bell(l, a) && tele::condition_class1(l, a) &&
                          tele::condition_class23(l, a);
    records[k] = rec;
  }
  return records;
}

std::string to_csv(const std::vector<ScanRecord> &records) {
  std::ostringstream o;
  o << kScanCsvHeader << "\n";
  for (const ScanRecord &r : records) {
    o << fmt17(r.lambda) << "," << fmt17(r.alpha) << "," << fmt17(r.beta) << ","
      << fmt17(r.tau_raw) << "," << fmt17(r.f_st) << "," << (r.bell_violating ? 1 : 0) << ","
      << (r.tele_violating ? 1 : 0) << "," << (r.nonclassical_fidelity ? 1 : 0) << ","
      << (r.in_paper_region ? 1 : 0) << "\n";
  }
  return o.str();
}

}  // namespace telebell::report
