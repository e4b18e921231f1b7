#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ovallab/curve.hpp"

using namespace ovallab;

namespace {
const UniformGrid g256 = periodic_grid(0.0, 2.0 * M_PI, 256);
}

TEST_CASE("turning angle") {
  SUBCASE("circle") {
    auto phi = turning_angle(CurveSpec(), g256);
    for (int j = 0; j < g256.points; ++j)
      CHECK(phi.values[j] == doctest::Approx(g256.node(j)).epsilon(1e-15));
  }
  SUBCASE("single even mode") {
    const double eps = 0.3;
    CurveSpec c({{2, 0.0, eps / 2}});
    auto phi = turning_angle(c, g256);
    for (int j = 0; j < g256.points; ++j) {
      const double s = g256.node(j);
      CHECK(phi.values[j] == doctest::Approx(s + 0.5 * eps * std::sin(2 * s)).epsilon(1e-14));
    }
  }
  SUBCASE("total turning is one full turn") {
    CurveSpec c({{2, 0.05, 0.1}, {4, -0.02, 0.0}, {5, 0.01, 0.01}});
    CHECK(c.turning_angle_at(0.0) == doctest::Approx(c.psi(0.0)));
    for (double s : {0.0, 1.3, 4.0})
      CHECK(c.turning_angle_at(s + 2.0 * M_PI) - c.turning_angle_at(s) ==
            doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  }
}

TEST_CASE("curvature") {
  SUBCASE("circle has unit curvature") {
    auto k = curvature(CurveSpec(), g256);
    CHECK(k.values.minCoeff() == doctest::Approx(1.0));
    CHECK(k.values.maxCoeff() == doctest::Approx(1.0));
  }
  SUBCASE("analytic derivative of the turning angle") {
    const double eps = 0.4;
    CurveSpec c({{2, 0.0, eps / 2}});
    auto k = curvature(c, g256);
    for (int j = 0; j < g256.points; ++j) {
      const double s = g256.node(j);
      CHECK(k.values[j] == doctest::Approx(1.0 + eps * std::cos(2 * s)).epsilon(1e-14));
    }
  }
  SUBCASE("total curvature is 2 pi") {
    for (std::uint64_t seed : {1u, 7u, 42u}) {
      const CurveSpec c = random_oval(seed, 6, 0.5);
      auto k = curvature(c, g256);
      CHECK(trapezoid_periodic(k) == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
    }
  }
  SUBCASE("non-convex input rejected with location") {
    CurveSpec c({{2, 0.0, 0.6}});  // kappa = 1 + 1.2 cos 2s dips negative
    CHECK_THROWS_AS(curvature(c, g256), Error);
    try {
      curvature(c, g256);
    } catch (const Error& e) {
      CHECK(e.code() == errc::positivity_violation);
      CHECK(e.location().has_value());
    }
  }
}

TEST_CASE("closure residual") {
  SUBCASE("circle closes") {
    auto r = closure_residual(CurveSpec(), g256);
    CHECK(std::abs(r.cos_residual) < 1e-14);
    CHECK(std::abs(r.sin_residual) < 1e-14);
  }
  SUBCASE("even harmonics close automatically") {
    CurveSpec c({{2, 0.2, -0.1}, {4, 0.05, 0.02}, {6, -0.03, 0.01}});
    auto r = closure_residual(c, g256);
    CHECK(std::abs(r.cos_residual) < 1e-12);
    CHECK(std::abs(r.sin_residual) < 1e-12);
  }
  SUBCASE("an n = 1 mode breaks closure") {
    auto r = closure_residual(CurveSpec({{1, 0.3, 0.0}}), g256);
    CHECK(r.norm() > 1e-3);
  }
}

TEST_CASE("closure projection") {
  SUBCASE("closed curve is a fixed point") {
    CurveSpec c({{2, 0.2, 0.1}});
    CurveSpec p = project_closure(c);
    CHECK(closure_residual(p, g256).norm() < 1e-10);
    for (std::size_t i = 0; i < c.harmonics().size(); ++i) {
      CHECK(p.harmonics()[i].a == doctest::Approx(c.harmonics()[i].a).epsilon(1e-9));
      CHECK(p.harmonics()[i].b == doctest::Approx(c.harmonics()[i].b).epsilon(1e-9));
    }
  }
  SUBCASE("small n = 1 contamination is projected out") {
    CurveSpec c({{1, 1e-3, 0.0}, {2, 0.2, -0.05}, {4, 0.03, 0.0}});
    CurveSpec p = project_closure(c);
    CHECK(closure_residual(p, g256).norm() <= 1e-10);
    double a1 = 0.0;
    for (const auto& h : p.harmonics())
      if (h.n == 1) a1 = h.a;
    CHECK(std::abs(a1) < 1e-3);
    // non-projected coordinates untouched
    for (const auto& h : p.harmonics())
      if (h.n == 2) {
        CHECK(h.a == 0.2);
        CHECK(h.b == -0.05);
      }
  }
  SUBCASE("pure n = 1 curve projects to a near-circle") {
    CurveSpec p = project_closure(CurveSpec({{1, 0.2, 0.1}}));
    CHECK(closure_residual(p, g256).norm() <= 1e-10);
    CHECK(p.coefficient_norm() < 0.05);
  }
  SUBCASE("projection is idempotent") {
    CurveSpec p = project_closure(CurveSpec({{1, 0.15, -0.1}, {2, 0.1, 0.0}}));
    CurveSpec q = project_closure(p);
    double drift = 0.0;
    for (std::size_t i = 0; i < p.harmonics().size(); ++i) {
      drift = std::max(drift, std::abs(p.harmonics()[i].a - q.harmonics()[i].a));
      drift = std::max(drift, std::abs(p.harmonics()[i].b - q.harmonics()[i].b));
    }
    CHECK(drift <= 1e-9);
  }
}

TEST_CASE("coordinate reconstruction") {
  SUBCASE("circle of radius 1 about (0, 1)") {
    auto pts = reconstruct_xy(CurveSpec(), g256);
    double worst = 0.0;
    for (const auto& p : pts)
      worst = std::max(worst, std::abs(std::hypot(p[0], p[1] - 1.0) - 1.0));
    // cumulative trapezoid carries ~1.004e-4 at this resolution
    CHECK(worst < 1.05e-4);
  }
  SUBCASE("closed curve endpoint gap") {
    CurveSpec c({{2, 0.1, 0.05}, {4, -0.02, 0.01}});
    auto pts = reconstruct_xy(c, g256);
    const auto& last = pts.back();
    const double h = g256.spacing();
    // advance the last node by one step to compare against the start
    const double phi_end = c.turning_angle_at(g256.node(g256.points - 1));
    const double phi_wrap = c.turning_angle_at(2.0 * M_PI);
    const double x_end = last[0] + 0.5 * h * (std::cos(phi_end) + std::cos(phi_wrap));
    const double y_end = last[1] + 0.5 * h * (std::sin(phi_end) + std::sin(phi_wrap));
    CHECK(std::hypot(x_end - pts[0][0], y_end - pts[0][1]) <= 1e-6);
  }
  SUBCASE("kappa = 1 + 0.5 cos 2s closes to quadrature accuracy") {
    CurveSpec c({{2, 0.0, 0.25}});
    auto pts = reconstruct_xy(c, g256);
    const auto& last = pts.back();
    const double h = g256.spacing();
    const double phi_end = c.turning_angle_at(g256.node(g256.points - 1));
    const double phi_wrap = c.turning_angle_at(2.0 * M_PI);
    const double x_end = last[0] + 0.5 * h * (std::cos(phi_end) + std::cos(phi_wrap));
    const double y_end = last[1] + 0.5 * h * (std::sin(phi_end) + std::sin(phi_wrap));
    CHECK(std::hypot(x_end - pts[0][0], y_end - pts[0][1]) <= 1e-8);
  }
}

TEST_CASE("seeded oval sampler") {
  SUBCASE("zero amplitude gives the circle") {
    CHECK(random_oval(3, 6, 0.0).is_circle());
  }
  SUBCASE("deterministic in the seed") {
    const CurveSpec a = random_oval(11, 6, 0.5);
    const CurveSpec b = random_oval(11, 6, 0.5);
    REQUIRE(a.harmonics().size() == b.harmonics().size());
    for (std::size_t i = 0; i < a.harmonics().size(); ++i) {
      CHECK(a.harmonics()[i].a == b.harmonics()[i].a);
      CHECK(a.harmonics()[i].b == b.harmonics()[i].b);
    }
  }
  SUBCASE("samples are admissible with margin") {
    const CurveSpec c = random_oval(1, 6, 0.5);
    double kmin = 0.0;
    ClosureResidual r;
    CHECK(admissible(c, 1e-12, &kmin, &r));
    CHECK(kmin > 0.05);
    CHECK(std::abs(r.cos_residual) <= 1e-12);
    CHECK(std::abs(r.sin_residual) <= 1e-12);
    for (const auto& h : c.harmonics()) CHECK(h.n % 2 == 0);
  }
  SUBCASE("amplitude bound enforced") {
    CHECK_THROWS_AS(random_oval(0, 6, 1.0), Error);
  }
}

TEST_CASE("curve file round trip") {
  CurveSpec c({{2, 0.125, -0.5}, {4, 0.0, 0.03125}});
  const std::string path = "curve_roundtrip_test.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n" << c.to_file_text();
  }
  CurveSpec back = CurveSpec::from_file(path);
  REQUIRE(back.harmonics().size() == c.harmonics().size());
  for (std::size_t i = 0; i < c.harmonics().size(); ++i) {
    CHECK(back.harmonics()[i].n == c.harmonics()[i].n);
    CHECK(back.harmonics()[i].a == c.harmonics()[i].a);
    CHECK(back.harmonics()[i].b == c.harmonics()[i].b);
  }
  std::remove(path.c_str());

  // empty file = circle
  {
    std::ofstream out(path);
    out << "# nothing here\n";
  }
  CHECK(CurveSpec::from_file(path).is_circle());
  std::remove(path.c_str());
}
