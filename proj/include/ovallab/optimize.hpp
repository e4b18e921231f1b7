#ifndef OVALLAB_OPTIMIZE_HPP
#define OVALLAB_OPTIMIZE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ovallab/curve_operator.hpp"

namespace ovallab {

enum class OptimizationSense { minimize, maximize };
enum class CurveFamily { even_harmonic, general };

struct OptimizationProblem {
  double coupling = 1.0;
  OptimizationSense sense = OptimizationSense::minimize;
  CurveFamily family = CurveFamily::even_harmonic;
  int max_harmonic = 6;
  int resolution = 32;
  double barrier_strength = 1e-3;
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_evals = 5000;
  double init_amplitude = 0.5;
  int parallelism = 1;
};

struct ObjectiveDiagnostics {
  double lambda1 = 0.0;
  bool barrier_active = false;
  bool kappa_violation = false;
};

/// Ground eigenvalue of the curve operator plus a logarithmic wall that
/// switches on when the sampled curvature drops under 0.1; non-convex
/// curves score the sense-worst sentinel so derivative-free steps back off.
double objective(const CurveSpec& c, double g, int resolution, double barrier_strength,
                 OptimizationSense sense = OptimizationSense::minimize,
                 ObjectiveDiagnostics* diag = nullptr);

enum class Termination { converged, eval_budget, barrier_hit };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::eval_budget: return "eval_budget";
    case Termination::barrier_hit: return "barrier_hit";
  }
  return "unknown";
}

struct OptimizationTrace {
  CurveSpec best_curve;
  double best_value = 0.0;
  std::vector<std::pair<long, double>> history;  // accepted improvements, winning restart
  Termination termination = Termination::converged;
  std::optional<HalfBoundCertificate> certificate;  // attached when g = 1
  long total_evals = 0;
  bool warned_unbounded_sense = false;
  std::vector<CurveSpec> conjecture_violations;  // curves with lambda1 < 1 - 1e-6 at g = 1
};

OptimizationTrace minimize_lambda1(const OptimizationProblem& p);
OptimizationTrace maximize_lambda1(const OptimizationProblem& p);

struct ScanRow {
  double eps = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// lambda1 and lambda2 along the ray circle + eps * direction; stops early
/// (setting *truncated) where curvature positivity is lost.
std::vector<ScanRow> perturbation_scan(double g, const CurveSpec& direction,
                                       const std::vector<double>& eps_grid, int resolution = 48,
                                       bool* truncated = nullptr);

/// d lambda1 / d(a_n, b_n) for the listed modes via the eigenvalue
/// stationarity identity: 2 g int kappa (d kappa/d p) f^2 ds for the
/// normalized ground state f. Needs a simple ground eigenvalue.
Eigen::VectorXd hf_gradient(const CurveSpec& c, double g, int resolution,
                            const std::vector<int>& modes);

}  // namespace ovallab

#endif
