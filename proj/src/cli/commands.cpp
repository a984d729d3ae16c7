#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include "cli/acceptance.hpp"
#include "hardyliou/error.hpp"

namespace hardyliou::cli {

namespace {

using io::json;

struct Context {
  const ExperimentConfig& cfg;
  const std::filesystem::path& out_dir;
  std::ostream& log;
  Report& report;
};

double tail_scale(double value) { return std::max(1.0, std::abs(value)); }

OperatorMatrix select_operator(const ExperimentConfig& cfg) {
  const std::string kind = param_string(cfg, "operator", "liouville");
  if (kind == "liouville") return liouville_matrix(cfg.symbol(), cfg.N);
  if (kind == "scaled") return scaled_liouville_matrix(cfg.symbol(), param_double(cfg, "a", 0.5), cfg.N);
  if (kind == "weighted") return weighted_liouville_matrix(cfg.symbol(), cfg.weight_map(), cfg.N);
  throw Error(ErrorKind::Config, "params.operator: expected liouville, scaled or weighted");
}

std::vector<Complex> complex_list_param(const ExperimentConfig& cfg, const char* key,
                                        std::vector<Complex> fallback) {
  if (!cfg.params.contains(key)) return fallback;
  const json& list = cfg.params[key];
  if (!list.is_array())
    throw Error(ErrorKind::Config, std::string("params.") + key + ": expected a list");
  std::vector<Complex> out;
  for (const json& z : list) out.push_back(io::complex_from_json(z));
  return out;
}

void spectrum(Context& c) {
  const OperatorMatrix A = select_operator(c.cfg);
  const auto pairs = eigendecompose(A);
  const double normA = A.entries().norm();
  double worst = 0.0;
  std::string csv = "re,im,residual\n";
  for (const EigenPair& p : pairs) {
    worst = std::max(worst, p.residual);
    csv += io::to_json(p.value)[0].dump() + "," + io::to_json(p.value)[1].dump() + "," +
           json(p.residual).dump() + "\n";
  }
  c.report.results()["operator"] = to_string(A.kind());
  c.report.results()["eigenvalues"] = io::eigen_report(pairs);
  if (!A.warnings().empty()) c.report.results()["warnings"] = A.warnings();
  io::write_file(c.out_dir / "spectrum.csv", csv);
  c.report.certify("eigenpair residual", worst, 1e-10 * std::max(1.0, normA),
                   "max ||A v - lambda v|| <= 1e-10 * max(1, ||A||_F)");

  const TaylorPolynomial& f = c.cfg.symbol();
  if (A.kind() == OperatorKind::Liouville && f.degree() <= 1 && std::abs(f[0]) < std::abs(f[1])) {
    std::vector<Complex> expected;
    for (int n = 0; n <= c.cfg.N; ++n) expected.push_back(f[1] * static_cast<double>(n));
    std::vector<Complex> got;
    for (const EigenPair& p : pairs) got.push_back(p.value);
    const auto order = [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    std::sort(expected.begin(), expected.end(), order);
    double err = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) err = std::max(err, std::abs(got[i] - expected[i]));
    c.report.certify("affine spectrum {alpha n}", err,
                     1e-10 * std::max(1.0, std::abs(f[1]) * c.cfg.N),
                     "max |lambda_n - alpha n| <= 1e-10 * max(1, |alpha| N)");
  }
}

void adjoint_check(Context& c) {
  const TaylorPolynomial& f = c.cfg.symbol();
  const int N = c.cfg.N;
  const std::size_t M = c.cfg.boundary_samples(std::max<std::size_t>(512, default_boundary_samples(N)));
  const int cases = param_int(c.cfg, "cases", 100);
  const double rmax = param_double(c.cfg, "r", 0.8);
  if (cases < 1 || !(rmax > 0.0 && rmax < 1.0))
    throw Error(ErrorKind::Config, "params: need cases >= 1 and 0 < r < 1");
  const OperatorMatrix adj = adjoint_matrix(liouville_matrix(f, N));
  std::mt19937_64 rng(c.cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0)), radius(0.0, rmax);
  double worst = 0.0;
  for (int k = 0; k < cases; ++k) {
    const double r = radius(rng);
    std::vector<Complex> hc(N + 1);
    double p = 1.0;
    for (auto& x : hc) {
      x = std::polar(p, angle(rng));
      p *= r;
    }
    const TaylorPolynomial h(std::move(hc));
    worst = std::max(worst, (adjoint_apply_boundary(f, h, N, M) - adj.apply(h)).norm());
  }
  c.report.results()["cases"] = cases;
  c.report.results()["M"] = M;
  c.report.results()["max_discrepancy"] = worst;
  c.report.certify("boundary vs conjugate transpose", worst, 1e-8 * tail_scale(f.norm()),
                   "max ||boundary - matrix|| <= 1e-8 * max(1, ||f||)");

  const Complex w = io::complex_from_json(c.cfg.params.value("w", json::array({0.3, 0.2})));
  const int jmax = param_int(c.cfg, "j_max", 3);
  json kernels = json::array();
  double worst_leibniz = 0.0;
  for (int j = 1; j <= jmax; ++j) {
    const TaylorPolynomial oracle = adj.apply(kernel({w, j - 1, false}, N));
    const double leibniz = (adjoint_on_derivative_kernel(f, w, j, N, KernelAdjointRule::Leibniz) - oracle).norm();
    const double printed = (adjoint_on_derivative_kernel(f, w, j, N, KernelAdjointRule::AsPrinted) - oracle).norm();
    worst_leibniz = std::max(worst_leibniz, leibniz / tail_scale(oracle.norm()));
    kernels.push_back({{"j", j}, {"leibniz_discrepancy", leibniz}, {"as_printed_discrepancy", printed}});
  }
  c.report.results()["derivative_kernels"] = kernels;
  c.report.certify("adjoint on derivative kernels", worst_leibniz, 1e-8,
                   "max_j ||rule - matrix|| / max(1, ||matrix||) <= 1e-8");
}

Trajectory simulate(const ExperimentConfig& cfg) {
  const OdeSpec& ode = cfg.flow();
  return integrate_ode(cfg.symbol(), ode.z0, ode.T, ode.dt);
}

void occupation(Context& c) {
  const TaylorPolynomial& f = c.cfg.symbol();
  const Trajectory path = simulate(c.cfg);
  io::write_trajectory_csv(c.out_dir / "trajectory.csv", path);
  const OccupationResidual res = liouville_occupation_residual(f, path, c.cfg.N);
  const OccupationKernel gamma = occupation_kernel(path, c.cfg.N);
  const TaylorPolynomial lhs = adjoint_matrix(liouville_matrix(f, c.cfg.N)).apply(gamma.series);
  auto& r = c.report.results();
  r["samples"] = path.size();
  r["quadrature"] = to_string(gamma.quadrature);
  r["residual"] = res.residual;
  r["trajectory_defect"] = res.trajectory_defect;
  r["signal_formula_discrepancy"] = (adjoint_on_signal(f, path, c.cfg.N) - lhs).norm();
  r["joint_conjugate_discrepancy"] = (adjoint_on_signal_joint_conjugate(f, path, c.cfg.N) - lhs).norm();
  r["occupation_kernel"] = io::to_json(gamma.series);
  c.report.certify("A_f^* Gamma = K_{gamma(T)} - K_{gamma(0)}", res.residual, 1e-6,
                   "residual <= 1e-6 (absolute, truncation N)");
  c.report.certify("trajectory solves z' = f(z)", res.trajectory_defect, res.defect_tolerance,
                   "central-difference defect <= 10 dt^2");
}

void weighted(Context& c) {
  const TaylorPolynomial& f = c.cfg.symbol();
  const TaylorPolynomial& phi = c.cfg.weight_map();
  const int N = c.cfg.N;
  auto& r = c.report.results();
  const OperatorMatrix A = weighted_liouville_matrix(f, phi, N);
  const OperatorMatrix adj = adjoint_matrix(A);
  if (!A.warnings().empty()) r["warnings"] = A.warnings();

  const auto points = complex_list_param(c.cfg, "kernel_points", {0.0, 0.3, {0.2, -0.25}, {-0.4, 0.1}});
  json kernels = json::array();
  double worst = 0.0, worst_norm = 0.0;
  for (Complex w : points) {
    const TaylorPolynomial oracle = adj.apply(szego_kernel(w, N));
    const TaylorPolynomial formula = weighted_adjoint_on_kernel(f, phi, w, N);
    const double err = (formula - oracle).norm();
    const double normalized_sq = oracle.norm_sq() * (1.0 - std::norm(w));
    const double closed = kernel_action_norm_sq(f, phi, w);
    const double norm_err = std::abs(normalized_sq - closed) / tail_scale(closed);
    worst = std::max(worst, err / tail_scale(oracle.norm()));
    worst_norm = std::max(worst_norm, norm_err);
    kernels.push_back({{"w", io::to_json(w)},
                       {"discrepancy", err},
                       {"action_norm_sq", normalized_sq},
                       {"closed_form_squared", closed},
                       {"closed_form_unsquared_f", std::abs(f(w)) * closed / std::max(std::norm(f(w)), 1e-300)}});
  }
  r["kernels"] = kernels;
  c.report.certify("weighted adjoint on kernels", worst, 1e-8,
                   "max_w ||formula - matrix|| / max(1, ||matrix||) <= 1e-8");
  c.report.certify("kernel action norm (|f|^2 reading)", worst_norm, 1e-8,
                   "max_w |matrix - closed form| / max(1, closed form) <= 1e-8");

  const SymbolRelation rel = self_adjoint_symbol_relation(f, phi, BoundaryGrid::nodes(64), points, N);
  r["symbol_relation_residual"] = rel.residual;
  r["symbol_relation_kernel_defect"] = rel.kernel_defect;
  r["hermitian_defect"] = hermitian_defect(A);

  if (c.cfg.ode) {
    const Trajectory path = simulate(c.cfg);
    io::write_trajectory_csv(c.out_dir / "trajectory.csv", path);
    const OccupationResidual res = weighted_occupation_residual(f, phi, path, N);
    const OccupationSelfAdjoint sa = occupation_self_adjoint_relation(f, phi, path, N);
    r["occupation_residual"] = res.residual;
    r["occupation_self_adjoint"] = {{"as_printed", sa.as_printed}, {"composed", sa.composed}};
    c.report.certify("A_{f,phi}^* Gamma = K_{phi(gamma(T))} - K_{phi(gamma(0))}", res.residual, 1e-6,
                     "residual <= 1e-6 (absolute, truncation N)");
  }
}

void dmd(Context& c) {
  std::vector<Trajectory> data;
  std::vector<std::string> digests;
  json sources = json::array();
  for (const auto& path : c.cfg.trajectories) {
    io::IngestedTrajectory t = io::read_trajectory_csv(path);
    sources.push_back({{"path", path.filename().string()}, {"sha256", t.digest}, {"samples", t.trajectory.size()}});
    digests.push_back(t.digest);
    data.push_back(std::move(t.trajectory));
  }
  if (c.cfg.params.contains("initial_points")) {
    const OdeSpec& ode = c.cfg.flow();
    for (Complex z0 : complex_list_param(c.cfg, "initial_points", {}))
      data.push_back(integrate_ode(c.cfg.symbol(), z0, ode.T, ode.dt));
  }
  if (data.empty())
    throw Error(ErrorKind::Config, "dmd: give trajectories or params.initial_points with f and ode");
  std::optional<double> ridge;
  if (c.cfg.params.contains("ridge")) ridge = param_double(c.cfg, "ridge", 0.0);
  const DmdModel model = fit(data, c.cfg.N, ridge, digests);
  io::write_file(c.out_dir / "model.json", io::to_json(model).dump(1) + "\n");

  auto& r = c.report.results();
  r["trajectories"] = data.size();
  r["sources"] = sources;
  r["ridge"] = model.ridge;
  r["gram_min_eigenvalue"] = model.gram_min_eigenvalue;
  json modes = json::array();
  for (const DmdMode& m : model.modes)
    modes.push_back({{"eigenvalue", io::to_json(m.eigenvalue)}, {"residual", m.residual}});
  r["modes"] = modes;
  const double trace = model.gram.trace().real();
  c.report.certify("Gram positive semidefinite", std::max(0.0, -model.gram_min_eigenvalue),
                   1e-10 * std::max(1.0, trace), "-min eig(G) <= 1e-10 * max(1, trace G)");

  if (c.cfg.params.contains("expected_eigenvalues")) {
    const auto expected = complex_list_param(c.cfg, "expected_eigenvalues", {});
    const auto leading = model.leading(expected.size());
    double err = leading.size() == expected.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < leading.size(); ++i) err = std::max(err, std::abs(leading[i] - expected[i]));
    r["leading_eigenvalues"] = json::array();
    for (Complex z : leading) r["leading_eigenvalues"].push_back(io::to_json(z));
    c.report.certify("leading eigenvalues", err, param_double(c.cfg, "eigenvalue_tol", 1e-2),
                     "max |mu_i - expected_i| over the smallest-residual modes <= params.eigenvalue_tol");
  }
  if (c.cfg.params.contains("predict")) {
    json preds = json::array();
    double worst = 0.0;
    bool truth_available = c.cfg.f.has_value();
    for (const json& q : c.cfg.params["predict"]) {
      const Complex z0 = io::complex_from_json(q.at("z0"));
      const double t = q.at("t").get<double>();
      const Prediction p = predict(model, z0, t);
      json entry = {{"z0", io::to_json(z0)}, {"t", t}, {"value", io::to_json(p.value)},
                    {"projection_residual", p.projection_residual}, {"low_confidence", p.low_confidence}};
      if (truth_available) {
        const double dt = c.cfg.ode ? c.cfg.ode->dt : 1e-3;
        const Complex truth = t > 0.0 ? integrate_ode(c.cfg.symbol(), z0, t, std::min(dt, t)).back() : z0;
        entry["truth"] = io::to_json(truth);
        entry["error"] = std::abs(p.value - truth);
        worst = std::max(worst, std::abs(p.value - truth));
      }
      preds.push_back(entry);
    }
    r["predictions"] = preds;
    if (truth_available)
      c.report.certify("prediction vs RK4", worst, param_double(c.cfg, "prediction_tol", 1e-3),
                       "max |predict - RK4| <= params.prediction_tol");
  }
}

void bounds(Context& c) {
  const TaylorPolynomial& f = c.cfg.symbol();
  const TaylorPolynomial& phi = c.cfg.weight_map();
  auto& r = c.report.results();
  const BoundednessBound bound = boundedness_bound(f, phi);
  r["bound"] = io::to_json(bound);
  std::vector<double> radii;
  if (c.cfg.params.contains("radii")) {
    radii = c.cfg.params["radii"].get<std::vector<double>>();
  } else {
    for (int i = 1; i <= 99; ++i) radii.push_back(0.01 * i);
  }
  const RadialProfile profile = compactness_profile(f, phi, radii);
  io::write_file(c.out_dir / "compactness_profile.csv", io::profile_csv(profile));
  r["compactness_profile"] = io::to_json(profile);

  const int n_max = std::min(param_int(c.cfg, "n_max", 32), c.cfg.N);
  const std::size_t M = c.cfg.boundary_samples(default_boundary_samples(c.cfg.N));
  const std::vector<double> seq = monomial_norm_sequence(f, phi, n_max, M);
  r["monomial_norms_sq"] = seq;
  const OperatorMatrix A = weighted_liouville_matrix(f, phi, c.cfg.N);
  const int exact_upto = c.cfg.N - multiply(f, derivative(phi), 2 * c.cfg.N).degree();
  double err = 0.0;
  for (int n = 0; n <= std::min(n_max, exact_upto); ++n) {
    const double col = A.entries().col(n).squaredNorm();
    err = std::max(err, std::abs(seq[n] - col) / tail_scale(col));
  }
  c.report.certify("monomial norms vs matrix columns", err, 1e-10,
                   "max_n |quadrature - column norm^2| / max(1, column norm^2) <= 1e-10 for n <= N - deg(f phi')");

  if (c.cfg.params.contains("blaschke_zeros")) {
    const BlaschkeProduct B(complex_list_param(c.cfg, "blaschke_zeros", {}));
    const BlaschkeBound bb = blaschke_bound(f, B);
    r["blaschke"] = {{"B_prime", bb.b_prime}, {"ratio_deviation", io::to_json(bb.ratio)}};
  }
  if (c.cfg.params.contains("expect")) {
    const std::string expect = param_string(c.cfg, "expect", "");
    if (expect != "bounded" && expect != "diverges")
      throw Error(ErrorKind::Config, "params.expect: expected bounded or diverges");
    c.report.require("divergence flag", bound.diverges == (expect == "diverges"),
                     "probe along r = 1 - 10^{-k/2}: last five increasing and growth > 1e3 means diverges");
  }
}

void hs(Context& c) {
  const std::size_t M = c.cfg.boundary_samples(std::max<std::size_t>(1024, default_boundary_samples(c.cfg.N)));
  const HsNorm full = hs_norm(c.cfg.symbol(), c.cfg.weight_map(), c.cfg.N, M);
  const HsNorm half = hs_norm(c.cfg.symbol(), c.cfg.weight_map(), std::max(1, c.cfg.N / 2), M);
  auto& r = c.report.results();
  r["frobenius_sq"] = full.frobenius_sq;
  r["frobenius_sq_half_order"] = half.frobenius_sq;
  r["finite"] = full.finite;
  if (full.finite) {
    r["quadrature_sq"] = full.quadrature_sq;
    r["printed_closed_form_sq"] = full.printed_sq;
    c.report.certify("Frobenius vs closed form", std::abs(full.frobenius_sq - full.quadrature_sq),
                     1e-8 * std::max(1.0, full.quadrature_sq),
                     "|frobenius^2 - quadrature^2| <= 1e-8 * max(1, quadrature^2)");
  }
  c.report.certify("Frobenius monotone in N", std::max(0.0, half.frobenius_sq - full.frobenius_sq),
                   1e-12 * std::max(1.0, full.frobenius_sq),
                   "frobenius^2(N/2) - frobenius^2(N) <= 1e-12 * max(1, frobenius^2(N))");
}

void smirnov(Context& c) {
  const std::size_t M = c.cfg.boundary_samples(1024);
  const BoundaryGrid fb = to_boundary(c.cfg.symbol(), M);
  const SmirnovPair pair = smirnov_decompose(fb, c.cfg.N);
  const BoundaryGrid ab = to_boundary(pair.a, M);
  double outer = 0.0;
  for (std::size_t m = 0; m < M; ++m)
    outer = std::max(outer, std::abs(std::abs(ab[m]) - 1.0 / std::sqrt(1.0 + std::norm(fb[m]))));
  auto& r = c.report.results();
  r["a"] = io::to_json(pair.a);
  r["b"] = io::to_json(pair.b);
  r["boundary_defect"] = pair.boundary_defect;
  r["outer_modulus_error"] = outer;
  const TaylorPolynomial h({1.0, 0.5});
  r["domain_membership_residual"] = domain_membership_check(pair.a, pair.b, h, 0.0);
  c.report.certify("|a|^2 + |b|^2 = 1 on the circle", pair.boundary_defect, 1e-10,
                   "max | |a|^2 + |b|^2 - 1 | <= 1e-10");
  c.report.certify("outer factor modulus", outer, 1e-8,
                   "max | |a| - (1 + |f|^2)^{-1/2} | <= 1e-8");
}

void verify_all(Context& c) {
  json list = json::array();
  for (const Criterion& k : run_acceptance(c.cfg.seed)) {
    c.log << summary_line(k) << "\n";
    list.push_back({{"id", k.id}, {"name", k.name}, {"pass", k.pass}, {"value", k.value}, {"detail", k.detail}});
    c.report.require(std::to_string(k.id) + " " + k.name, k.pass, k.formula);
  }
  c.report.results()["criteria"] = list;
}

using Handler = void (*)(Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"spectrum", spectrum}, {"adjoint-check", adjoint_check}, {"occupation", occupation},
      {"weighted", weighted}, {"dmd", dmd},                     {"bounds", bounds},
      {"hs-norm", hs},        {"smirnov", smirnov},             {"verify-all", verify_all}};
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"spectrum", "adjoint-check", "occupation",
                                                 "weighted", "dmd",           "bounds",
                                                 "hs-norm",  "smirnov",       "verify-all"};
  return names;
}

Report::Report(std::string command, const ExperimentConfig& cfg)
    : command_(std::move(command)), inputs_(cfg.raw) {}

void Report::certify(const std::string& name, double value, double tolerance, const std::string& formula) {
  certificates_.push_back({{"name", name},
                           {"value", std::isfinite(value) ? json(value) : json(nullptr)},
                           {"tolerance", tolerance},
                           {"formula", formula},
                           {"pass", value <= tolerance}});
}

void Report::require(const std::string& name, bool ok, const std::string& formula) {
  certificates_.push_back({{"name", name}, {"formula", formula}, {"pass", ok}});
}

bool Report::pass() const {
  return std::all_of(certificates_.begin(), certificates_.end(),
                     [](const json& c) { return c["pass"].get<bool>(); });
}

json Report::document() const {
  return {{"schema", io::kSchemaVersion}, {"command", command_}, {"inputs", inputs_},
          {"results", results_},          {"certificates", certificates_},
          {"status", pass() ? "PASS" : "FAIL"}};
}

void Report::print(std::ostream& out) const {
  for (const json& c : certificates_) {
    out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
    if (c.contains("value")) out << "  value=" << c["value"].dump() << " tol=" << c["tolerance"].dump();
    out << "\n";
  }
  out << command_ << ": " << (pass() ? "PASS" : "FAIL") << "\n";
}

int run_command(const std::string& command, const ExperimentConfig& cfg,
                const std::filesystem::path& out_dir, std::ostream& log) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw Error(ErrorKind::Config, "unknown command '" + command + "'");
  std::filesystem::create_directories(out_dir);
  Report report(command, cfg);
  Context ctx{cfg, out_dir, log, report};
  it->second(ctx);
  io::write_file(out_dir / (command + ".json"), report.document().dump(1) + "\n");
  report.print(log);
  return report.pass() ? kExitPass : kExitCertificateFailure;
}

int exit_code_for(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (err == nullptr) {
    if (dynamic_cast<const nlohmann::json::exception*>(&e) != nullptr) return kExitInvalidConfig;
    return kExitCertificateFailure;
  }
  switch (err->kind()) {
    case ErrorKind::Config:
    case ErrorKind::Ingestion:
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidIndex:
    case ErrorKind::Domain:
    case ErrorKind::DiskExit:
    case ErrorKind::CompositionOutOfDisk:
    case ErrorKind::Aliasing:
      return kExitInvalidConfig;
    default:
      return kExitCertificateFailure;
  }
}

}  // namespace hardyliou::cli
