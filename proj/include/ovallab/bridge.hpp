#ifndef OVALLAB_BRIDGE_HPP
#define OVALLAB_BRIDGE_HPP

#include <array>

#include "ovallab/curve.hpp"
#include "ovallab/grid.hpp"

namespace ovallab {

/// Single-function change of variables s = int u1^2: w(s) = u1^2 with
/// int w'(s)^2 >= pi^2 int w^2 (interval Dirichlet bound), plus the x-space
/// functionals it must reproduce.
struct SingleBridgeReport {
  GridFunction s_of_x;
  GridFunction w;            // on a uniform closed grid over [0, 1]
  double dirichlet_lhs = 0;  // int wdot^2 ds    (= 4 * kinetic_x)
  double dirichlet_rhs = 0;  // pi^2 int w^2 ds  (= pi^2 * sextic_x)
  double kinetic_x = 0;      // int u1'^2 dx
  double sextic_x = 0;       // int u1^6 dx
};

SingleBridgeReport single_bridge(const GridFunction& u1, int s_points = 1024);

/// Pair change of variables: s = pi int (u1^2 + u2^2), polar split
/// (u1, u2) = rho (cos theta, sin theta), R = rho^2, phi = 2 theta.
/// Both functional ratios must agree, and the closure integrals of phi
/// reproduce the orthonormality of the pair.
struct BridgeReport {
  GridFunction s_of_x;
  GridFunction R;      // on a uniform closed grid over [0, 2 pi]
  GridFunction phi;    // unwrapped
  GridFunction kappa;  // d phi / ds
  double lhs_34 = 0;   // int (u1'^2 + u2'^2) dx
  double rhs_34 = 0;   // (pi^2/4) int (u1^2 + u2^2)^3 dx
  double lhs_311 = 0;  // int (Rdot^2 + R^2 phidot^2) ds
  double rhs_311 = 0;  // int R^2 ds
  ClosureResidual closure;
  double ratio_34 = 0;
  double ratio_311 = 0;
  std::array<double, 2> R_boundary{0, 0};
  double winding = 0;  // total turning of phi in units of 2 pi
};

BridgeReport pair_bridge(const GridFunction& u1, const GridFunction& u2, int s_points = 2048);

/// [int (u1'^2 + u2'^2)] / [(pi^2/4) int (u1^2 + u2^2)^3] straight in x,
/// no change of variables; the sweep-side view of the same quantity.
double functional_ratio_pair(const GridFunction& u1, const GridFunction& u2);

/// Time-curve reinterpretation x = R cos phi, y = R sin phi.
struct XYReport {
  double ratio_316 = 0;  // int (xdot^2 + ydot^2) / int (x^2 + y^2)
  std::array<double, 2> constraint_residuals{0, 0};
};

XYReport xy_interpretation(const GridFunction& R, const GridFunction& phi);

}  // namespace ovallab

#endif
