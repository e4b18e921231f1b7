#include "ovallab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovallab/parallel.hpp"

namespace ovallab {

namespace {

constexpr double kBarrierThreshold = 0.1;
constexpr double kSentinel = 1e300;

std::vector<int> family_modes(CurveFamily family, int max_harmonic) {
  std::vector<int> modes;
  if (family == CurveFamily::even_harmonic) {
    for (int n = 2; n <= max_harmonic; n += 2) modes.push_back(n);
  } else {
    for (int n = 1; n <= max_harmonic; ++n) modes.push_back(n);
  }
  return modes;
}

CurveSpec curve_from_coefficients(const Eigen::VectorXd& coeffs, const std::vector<int>& modes) {
  std::vector<Harmonic> hs;
  for (std::size_t i = 0; i < modes.size(); ++i)
    hs.push_back({modes[i], coeffs[2 * i], coeffs[2 * i + 1]});
  return CurveSpec(std::move(hs));
}

Eigen::VectorXd coefficients_of(const CurveSpec& c, const std::vector<int>& modes) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(2 * modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (const auto& h : c.harmonics())
      if (h.n == modes[i]) {
        coeffs[2 * i] = h.a;
        coeffs[2 * i + 1] = h.b;
      }
  return coeffs;
}

struct RestartResult {
  Eigen::VectorXd best_point;
  double best_value = kSentinel;
  double best_lambda1 = 0.0;
  bool best_barrier_active = false;
  std::vector<std::pair<long, double>> history;
  Termination termination = Termination::eval_budget;
  long evals = 0;
  std::vector<CurveSpec> violations;
};

}  // namespace

double objective(const CurveSpec& c, double g, int resolution, double barrier_strength,
                 OptimizationSense sense, ObjectiveDiagnostics* diag) {
  const UniformGrid grid = reference_grid(c);
  const GridFunction kappa = curvature_unchecked(c, grid);
  const double kmin = kappa.values.minCoeff();
  const double sign = sense == OptimizationSense::minimize ? 1.0 : -1.0;
  if (diag) *diag = {};

  if (kmin <= 0.0) {
    if (diag) diag->kappa_violation = true;
    return sign * kSentinel;
  }

  CurveOperatorSpec spec;
  spec.curve = c;
  spec.coupling = g;
  spec.resolution = resolution;
  const double lambda1 = lowest_eigs(spec, 1).eigenvalues[0];
  if (diag) diag->lambda1 = lambda1;

  double penalty = 0.0;
  if (kmin < kBarrierThreshold) {
    for (int j = 0; j < grid.points; ++j)
      if (kappa.values[j] < kBarrierThreshold)
        penalty -= barrier_strength * std::log(kappa.values[j] / kBarrierThreshold);
    if (diag) diag->barrier_active = penalty > 0.0;
  }
  return lambda1 + sign * penalty;
}

namespace {

RestartResult nelder_mead_restart(const OptimizationProblem& p, std::uint64_t restart_seed) {
  const std::vector<int> modes = family_modes(p.family, p.max_harmonic);
  const int dim = static_cast<int>(2 * modes.size());
  const double sign = p.sense == OptimizationSense::minimize ? 1.0 : -1.0;

  RestartResult res;
  auto evaluate = [&](const Eigen::VectorXd& pt) {
    CurveSpec c = curve_from_coefficients(pt, modes);
    if (p.family == CurveFamily::general && !c.is_circle()) {
      ClosureResidual r = closure_residual(c, reference_grid(c));
      if (r.norm() > 1e-10) {
        if (r.norm() >= M_PI) return kSentinel;  // outside the projection basin
        try {
          c = project_closure(c);
        } catch (const Error&) {
          return kSentinel;
        }
      }
    }
    ObjectiveDiagnostics diag;
    const double value = sign * objective(c, p.coupling, p.resolution, p.barrier_strength,
                                          p.sense, &diag);
    ++res.evals;
    if (p.coupling == 1.0 && !diag.kappa_violation && diag.lambda1 < 1.0 - 1e-6)
      res.violations.push_back(c);
    if (value < res.best_value) {
      res.best_value = value;
      res.best_point = pt;
      res.best_lambda1 = diag.lambda1;
      res.best_barrier_active = diag.barrier_active;
      res.history.emplace_back(res.evals, sign * value);
    }
    return value;
  };

  const CurveSpec start = random_oval(restart_seed, p.max_harmonic, p.init_amplitude);
  Eigen::VectorXd x0 = coefficients_of(start, modes);

  // initial simplex: x0 plus per-coordinate offsets
  std::vector<Eigen::VectorXd> pts(dim + 1, x0);
  std::vector<double> vals(dim + 1);
  for (int i = 1; i <= dim; ++i) pts[i][i - 1] += 0.05 * p.init_amplitude + 1e-4;
  for (int i = 0; i <= dim; ++i) vals[i] = evaluate(pts[i]);

  const double alpha = 1.0, gamma_e = 2.0, rho = 0.5, sigma = 0.5;
  while (res.evals < p.max_evals) {
    std::vector<int> order(dim + 1);
    for (int i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

    // convergence: simplex diameter or value spread
    double diameter = 0.0;
    for (int i = 1; i <= dim; ++i)
      diameter = std::max(diameter, (pts[order[i]] - pts[order[0]]).lpNorm<Eigen::Infinity>());
    const double spread = std::abs(vals[order[dim]] - vals[order[0]]);
    if (diameter < 1e-7 || spread < 1e-10) {
      res.termination = Termination::converged;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += pts[order[i]];
    centroid /= dim;
    const int worst = order[dim];

    Eigen::VectorXd reflected = centroid + alpha * (centroid - pts[worst]);
    const double fr = evaluate(reflected);
    if (fr < vals[order[0]]) {
      Eigen::VectorXd expanded = centroid + gamma_e * (reflected - centroid);
      const double fe = evaluate(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
    } else if (fr < vals[order[dim - 1]]) {
      pts[worst] = reflected;
      vals[worst] = fr;
    } else {
      Eigen::VectorXd contracted = centroid + rho * (pts[worst] - centroid);
      const double fc = evaluate(contracted);
      if (fc < vals[worst]) {
        pts[worst] = contracted;
        vals[worst] = fc;
      } else {
        for (int i = 1; i <= dim; ++i) {
          pts[order[i]] = pts[order[0]] + sigma * (pts[order[i]] - pts[order[0]]);
          vals[order[i]] = evaluate(pts[order[i]]);
        }
      }
    }
  }
  return res;
}

OptimizationTrace run_optimization(const OptimizationProblem& p) {
  if (p.restarts < 1 || p.max_evals < 1)
    fail(errc::invalid_input, "restarts and max_evals must be positive");

  std::vector<RestartResult> results(p.restarts);
  parallel_for_indexed(p.restarts, p.parallelism,
                       [&](int i) { results[i] = nelder_mead_restart(p, p.seed + i); });

  int best = 0;
  for (int i = 1; i < p.restarts; ++i)
    if (results[i].best_value < results[best].best_value) best = i;

  const std::vector<int> modes = family_modes(p.family, p.max_harmonic);
  OptimizationTrace trace;
  trace.best_curve = curve_from_coefficients(results[best].best_point, modes);
  if (p.family == CurveFamily::general && !trace.best_curve.is_circle() &&
      closure_residual(trace.best_curve, reference_grid(trace.best_curve)).norm() > 1e-10)
    trace.best_curve = project_closure(trace.best_curve);
  trace.best_value = results[best].best_lambda1;
  trace.history = results[best].history;
  // report improvements in lambda1 terms; the minimizer works on signed values
  trace.termination = results[best].best_barrier_active ? Termination::barrier_hit
                                                        : results[best].termination;
  for (const auto& r : results) {
    trace.total_evals += r.evals;
    for (const auto& v : r.violations) trace.conjecture_violations.push_back(v);
  }
  if (p.coupling == 1.0) {
    CurveOperatorSpec spec;
    spec.curve = trace.best_curve;
    spec.resolution = std::max(64, p.resolution);
    trace.certificate = halfbound_certificate(spec);
  }
  return trace;
}

}  // namespace

OptimizationTrace minimize_lambda1(const OptimizationProblem& p) {
  OptimizationProblem q = p;
  q.sense = OptimizationSense::minimize;
  return run_optimization(q);
}

OptimizationTrace maximize_lambda1(const OptimizationProblem& p) {
  OptimizationProblem q = p;
  q.sense = OptimizationSense::maximize;
  OptimizationTrace trace = run_optimization(q);
  if (q.coupling >= 0.0) trace.warned_unbounded_sense = true;
  return trace;
}

std::vector<ScanRow> perturbation_scan(double g, const CurveSpec& direction,
                                       const std::vector<double>& eps_grid, int resolution,
                                       bool* truncated) {
  if (truncated) *truncated = false;
  std::vector<ScanRow> rows;
  for (const double eps : eps_grid) {
    const CurveSpec c = direction.scaled(eps);
    if (curvature_unchecked(c, reference_grid(c)).values.minCoeff() <= 0.0) {
      if (truncated) *truncated = true;
      break;
    }
    CurveOperatorSpec spec;
    spec.curve = c;
    spec.coupling = g;
    spec.resolution = resolution;
    const Spectrum sp = lowest_eigs(spec, 2);
    rows.push_back({eps, sp.eigenvalues[0], sp.eigenvalues[1]});
  }
  return rows;
}

Eigen::VectorXd hf_gradient(const CurveSpec& c, double g, int resolution,
                            const std::vector<int>& modes) {
  CurveOperatorSpec spec;
  spec.curve = c;
  spec.coupling = g;
  spec.resolution = resolution;
  const Spectrum sp = lowest_eigs(spec, 2);
  if (sp.eigenvalues[1] - sp.eigenvalues[0] <= 1e-8)
    fail(errc::degeneracy_error, "ground eigenvalue nearly degenerate; derivative undefined");

  const GridFunction& f = sp.eigenfunctions[0];
  const UniformGrid& grid = f.grid;
  const GridFunction kappa = curvature_unchecked(c, grid);
  Eigen::VectorXd weight =
      2.0 * g * kappa.values.cwiseProduct(f.values.array().square().matrix());

  Eigen::VectorXd grad(2 * modes.size());
  const double h = grid.spacing();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const int n = modes[i];
    double ga = 0.0, gb = 0.0;
    for (int j = 0; j < grid.points; ++j) {
      const double s = grid.node(j);
      ga += weight[j] * (-n * std::sin(n * s));
      gb += weight[j] * (n * std::cos(n * s));
    }
    grad[2 * i] = ga * h;
    grad[2 * i + 1] = gb * h;
  }
  return grad;
}

}  // namespace ovallab
