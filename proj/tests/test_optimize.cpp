#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ovallab/optimize.hpp"

using namespace ovallab;

namespace {

double lambda1_of(const CurveSpec& c, double g, int resolution) {
  CurveOperatorSpec spec;
  spec.curve = c;
  spec.coupling = g;
  spec.resolution = resolution;
  return lowest_eigs(spec, 1).eigenvalues[0];
}

std::vector<double> eps_range(double lo, double hi, double step) {
  std::vector<double> out;
  for (double e = lo; e <= hi + 1e-12; e += step) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("objective value and barrier") {
  SUBCASE("circle is barrier-free") {
    ObjectiveDiagnostics diag;
    CHECK(objective(CurveSpec(), 1.0, 32, 1e-3, OptimizationSense::minimize, &diag) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(diag.barrier_active);
    CHECK(objective(CurveSpec(), -1.0, 32, 1e-3) == doctest::Approx(-1.0).epsilon(1e-10));
  }
  SUBCASE("wall activates close to the curvature boundary") {
    // min kappa = 0.08 here, under the 0.1 activation line
    const CurveSpec c({{2, 0.0, 0.46}});
    ObjectiveDiagnostics diag;
    const double value = objective(c, 1.0, 32, 1e-3, OptimizationSense::minimize, &diag);
    CHECK(diag.barrier_active);
    CHECK(value > diag.lambda1);
    // comfortably interior curve: objective equals the eigenvalue exactly
    ObjectiveDiagnostics diag2;
    const double v2 = objective(CurveSpec({{2, 0.0, 0.25}}), 1.0, 32, 1e-3,
                                OptimizationSense::minimize, &diag2);
    CHECK_FALSE(diag2.barrier_active);
    CHECK(v2 == diag2.lambda1);
  }
  SUBCASE("non-convex curve scores the sense-worst sentinel") {
    const CurveSpec c({{2, 0.0, 0.7}});
    ObjectiveDiagnostics diag;
    CHECK(objective(c, 1.0, 32, 1e-3, OptimizationSense::minimize, &diag) > 1e200);
    CHECK(diag.kappa_violation);
    CHECK(objective(c, 1.0, 32, 1e-3, OptimizationSense::maximize) < -1e200);
  }
}

TEST_CASE("stationarity gradient") {
  const std::vector<int> modes{2, 4};

  SUBCASE("the circle is stationary") {
    const Eigen::VectorXd grad = hf_gradient(CurveSpec(), 1.0, 32, modes);
    CHECK(grad.cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("matches central differences away from the circle") {
    const CurveSpec c({{2, 0.0, 0.1}});  // kappa = 1 + 0.2 cos 2s
    const Eigen::VectorXd grad = hf_gradient(c, 1.0, 48, modes);
    const double step = 1e-5;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (int comp = 0; comp < 2; ++comp) {
        auto shift = [&](double delta) {
          double a = 0.0, b = 0.0;
          for (const auto& h : c.harmonics())
            if (h.n == modes[i]) { a = h.a; b = h.b; }
          return c.with_coefficient(modes[i], a + (comp == 0 ? delta : 0.0),
                                    b + (comp == 1 ? delta : 0.0));
        };
        const double fd =
            (lambda1_of(shift(step), 1.0, 48) - lambda1_of(shift(-step), 1.0, 48)) /
            (2.0 * step);
        const double hf = grad[2 * i + comp];
        if (std::abs(fd) > 1e-7)
          CHECK(hf == doctest::Approx(fd).epsilon(1e-5));
        else
          CHECK(std::abs(hf - fd) < 1e-7);
      }
    }
  }
  SUBCASE("gap of the circle spectrum keeps the derivative defined at g = -1") {
    const Eigen::VectorXd grad = hf_gradient(CurveSpec(), -1.0, 32, modes);
    CHECK(grad.cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("random admissible curves against central differences") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const CurveSpec c = random_oval(seed + 100, 6, 0.5);
      std::vector<int> cmodes;
      for (const auto& h : c.harmonics()) cmodes.push_back(h.n);
      const Eigen::VectorXd grad = hf_gradient(c, 1.0, 48, cmodes);
      Eigen::VectorXd fd(grad.size());
      const double step = 1e-5;
      for (std::size_t i = 0; i < cmodes.size(); ++i) {
        const auto& h = c.harmonics()[i];
        fd[2 * i] = (lambda1_of(c.with_coefficient(h.n, h.a + step, h.b), 1.0, 48) -
                     lambda1_of(c.with_coefficient(h.n, h.a - step, h.b), 1.0, 48)) /
                    (2.0 * step);
        fd[2 * i + 1] = (lambda1_of(c.with_coefficient(h.n, h.a, h.b + step), 1.0, 48) -
                         lambda1_of(c.with_coefficient(h.n, h.a, h.b - step), 1.0, 48)) /
                        (2.0 * step);
      }
      CHECK((grad - fd).norm() <= 1e-4 * std::max(fd.norm(), 1e-6));
    }
  }
}

TEST_CASE("perturbation scans around the circle") {
  const CurveSpec direction({{2, 0.0, 0.5}});  // kappa delta = cos 2s per unit eps

  SUBCASE("zero offset reproduces the analytic circle values") {
    for (double g : {1.0, -1.0, 0.25}) {
      const auto rows = perturbation_scan(g, direction, {0.0}, 48);
      const auto exact = circle_spectrum(g, 2);
      CHECK(std::abs(rows[0].lambda1 - exact.eigenvalues[0]) < 1e-10);
      CHECK(std::abs(rows[0].lambda2 - exact.eigenvalues[1]) < 1e-10);
    }
  }
  SUBCASE("quartic flatness at g = 1") {
    const auto rows = perturbation_scan(1.0, direction, eps_range(0.0, 0.4, 0.1), 48);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].lambda1 == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& r : rows) CHECK(r.lambda1 >= 1.0 - 1e-10);
    const double d2 = rows[2].lambda1 - 1.0;  // eps = 0.2
    const double d4 = rows[4].lambda1 - 1.0;  // eps = 0.4
    const double exponent = std::log(d4 / d2) / std::log(2.0);
    CHECK(exponent >= 3.5);
  }
  SUBCASE("circle maximality regime at g = -1") {
    const auto rows = perturbation_scan(-1.0, direction, eps_range(0.0, 0.4, 0.1), 48);
    for (const auto& r : rows) {
      CHECK(r.lambda1 <= -1.0 + 1e-10);
      CHECK(r.lambda2 <= 0.0 + 1e-8);
    }
  }
  SUBCASE("circle minimality regime at g = 1/4") {
    const auto rows = perturbation_scan(0.25, direction, eps_range(0.0, 0.4, 0.1), 48);
    for (const auto& r : rows) CHECK(r.lambda1 >= 0.25 - 1e-10);
  }
  SUBCASE("scan truncates when convexity fails") {
    bool truncated = false;
    const auto rows =
        perturbation_scan(1.0, direction, eps_range(0.0, 1.6, 0.2), 32, &truncated);
    CHECK(truncated);
    CHECK(rows.size() < 9);
  }
}

TEST_CASE("optimization runs") {
  SUBCASE("short minimization run at g = 1 stays near the circle value") {
    OptimizationProblem p;
    p.coupling = 1.0;
    p.max_harmonic = 6;
    p.resolution = 16;
    p.seed = 5;
    p.restarts = 3;
    p.max_evals = 1200;
    const auto trace = minimize_lambda1(p);
    CHECK(trace.best_value == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(trace.best_value >= 1.0 - 1e-6);
    CHECK(trace.conjecture_violations.empty());
    CHECK(trace.certificate.has_value());
    CHECK(trace.certificate->c0_sq <= 0.5 + 1e-8);
    // accepted history is monotone for a minimization
    for (std::size_t i = 1; i < trace.history.size(); ++i)
      CHECK(trace.history[i].second <= trace.history[i - 1].second);
  }
  SUBCASE("bit-identical traces for identical problems") {
    OptimizationProblem p;
    p.resolution = 16;
    p.seed = 9;
    p.restarts = 2;
    p.max_evals = 400;
    const auto t1 = minimize_lambda1(p);
    const auto t2 = minimize_lambda1(p);
    CHECK(t1.best_value == t2.best_value);
    CHECK(t1.total_evals == t2.total_evals);
    REQUIRE(t1.history.size() == t2.history.size());
    for (std::size_t i = 0; i < t1.history.size(); ++i) {
      CHECK(t1.history[i].first == t2.history[i].first);
      CHECK(t1.history[i].second == t2.history[i].second);
    }
    // and independent of the worker count
    OptimizationProblem q = p;
    q.parallelism = 4;
    const auto t3 = minimize_lambda1(q);
    CHECK(t3.best_value == t1.best_value);
    CHECK(t3.total_evals == t1.total_evals);
  }
  SUBCASE("maximization at g = -1 stays near the circle value") {
    OptimizationProblem p;
    p.coupling = -1.0;
    p.resolution = 16;
    p.seed = 2;
    p.restarts = 3;
    p.max_evals = 1200;
    const auto trace = maximize_lambda1(p);
    CHECK(trace.best_value == doctest::Approx(-1.0).epsilon(2e-3));
    CHECK(trace.best_value <= -1.0 + 1e-6);
    CHECK_FALSE(trace.certificate.has_value());
  }
  SUBCASE("maximization with g = 1 is flagged and budget-bound") {
    OptimizationProblem p;
    p.coupling = 1.0;
    p.resolution = 16;
    p.seed = 1;
    p.restarts = 1;
    p.max_evals = 300;
    const auto trace = maximize_lambda1(p);
    CHECK(trace.warned_unbounded_sense);
    CHECK(trace.best_value > 1.0);
  }
  SUBCASE("general family run applies the closure projection") {
    OptimizationProblem p;
    p.family = CurveFamily::general;
    p.max_harmonic = 4;
    p.resolution = 16;
    p.seed = 3;
    p.restarts = 2;
    p.max_evals = 600;
    const auto trace = minimize_lambda1(p);
    CHECK(closure_residual(trace.best_curve, reference_grid(trace.best_curve)).norm() <= 1e-9);
    CHECK(trace.best_value >= 1.0 - 1e-6);
  }
}
