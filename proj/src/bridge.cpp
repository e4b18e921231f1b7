#include "ovallab/bridge.hpp"

#include <cmath>
#include <vector>

namespace ovallab {

namespace {

void check_normalized(const GridFunction& u, double tol, const char* who) {
  if (std::abs(inner(u, u) - 1.0) > tol)
    fail(errc::contract_violation, std::string(who) + " is not normalized");
}

// strictly increasing subset of (xs, ys); exponential tails of the density
// can produce steps below double resolution, which carry no measure
void dedupe(std::vector<double>& xs, std::vector<double>& ys) {
  std::size_t out = 1;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[out - 1]) {
      xs[out] = xs[i];
      ys[out] = ys[i];
      ++out;
    }
  }
  xs.resize(out);
  ys.resize(out);
}

MonotoneCubic interpolant(const Eigen::VectorXd& s, const Eigen::VectorXd& q) {
  std::vector<double> xs(s.data(), s.data() + s.size());
  std::vector<double> ys(q.data(), q.data() + q.size());
  dedupe(xs, ys);
  return MonotoneCubic(Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size()),
                       Eigen::Map<Eigen::VectorXd>(ys.data(), ys.size()));
}

}  // namespace

SingleBridgeReport single_bridge(const GridFunction& u1, int s_points) {
  check_normalized(u1, 1e-6, "u1");
  const int n = u1.size();
  const auto& vals = u1.values;
  const double umax = vals.cwiseAbs().maxCoeff();
  if (std::abs(vals[0]) > 1e-6 * umax || std::abs(vals[n - 1]) > 1e-6 * umax)
    fail(errc::contract_violation, "u1 must decay at both endpoints");

  Eigen::VectorXd density = vals.array().square();
  // u1 vanishing on an interior stretch makes s flat and w(s) multivalued;
  // exponential tails inside the support edges are fine
  int lo = 0, hi = n - 1;
  while (lo < n && density[lo] < 1e-12 * umax * umax) ++lo;
  while (hi >= 0 && density[hi] < 1e-12 * umax * umax) --hi;
  for (int j = lo; j <= hi; ++j)
    if (density[j] <= 1e-15 * umax * umax)
      fail_at(errc::flat_map_error, "density vanishes inside the support", u1.grid.node(j));

  GridFunction dens_fn(u1.grid, density);
  Eigen::VectorXd s = cumulative_trapezoid(dens_fn);
  s *= 1.0 / s[n - 1];

  SingleBridgeReport rep;
  rep.s_of_x = GridFunction(u1.grid, s);

  const UniformGrid sgrid = closed_grid(0.0, 1.0, s_points);
  rep.w = GridFunction(sgrid, interpolant(s, density)(sgrid.nodes()));

  GridFunction dw = derivative(rep.w);
  rep.dirichlet_lhs = inner(dw, dw);
  rep.dirichlet_rhs =
      M_PI * M_PI * inner(rep.w, rep.w);
  GridFunction du = derivative(u1);
  rep.kinetic_x = inner(du, du);
  GridFunction u6(u1.grid, vals.array().pow(6).matrix());
  rep.sextic_x = trapezoid(u6);

  if (rep.dirichlet_lhs < rep.dirichlet_rhs * (1.0 - 1e-6) - 1e-12)
    fail(errc::numerical_failure, "interval Dirichlet bound violated; resolution too coarse");
  return rep;
}

BridgeReport pair_bridge(const GridFunction& u1, const GridFunction& u2, int s_points) {
  if (!(u1.grid == u2.grid)) fail(errc::contract_violation, "pair needs a common grid");
  check_normalized(u1, 1e-8, "u1");
  check_normalized(u2, 1e-8, "u2");
  if (std::abs(inner(u1, u2)) > 1e-8) fail(errc::contract_violation, "pair is not orthogonal");

  const int n = u1.size();
  Eigen::VectorXd rho2 = u1.values.array().square() + u2.values.array().square();
  const double rho2max = rho2.maxCoeff();

  // support span and common-zero detection
  int lo = 0, hi = n - 1;
  while (lo < n && rho2[lo] < 1e-7 * rho2max) ++lo;
  while (hi >= 0 && rho2[hi] < 1e-7 * rho2max) --hi;
  for (int j = lo; j <= hi; ++j)
    if (rho2[j] < 1e-7 * rho2max)
      fail_at(errc::node_error, "u1 and u2 share a zero", u1.grid.node(j));

  // four-quadrant angle, unwrapped continuously along x
  Eigen::VectorXd theta(n);
  theta[lo] = std::atan2(u2.values[lo], u1.values[lo]);
  for (int j = lo + 1; j <= hi; ++j) {
    double t = std::atan2(u2.values[j], u1.values[j]);
    double delta = t - theta[j - 1];
    delta -= 2.0 * M_PI * std::round(delta / (2.0 * M_PI));
    if (std::abs(delta) > 0.5 * M_PI)
      fail_at(errc::resolution_error, "angle jump exceeds pi/2 between samples",
              u1.grid.node(j));
    theta[j] = theta[j - 1] + delta;
  }
  for (int j = 0; j < lo; ++j) theta[j] = theta[lo];
  for (int j = hi + 1; j < n; ++j) theta[j] = theta[hi];
  // canonical orientation: report the positively wound representative
  if (theta[hi] < theta[lo]) theta = -theta;

  GridFunction rho2_fn(u1.grid, rho2);
  Eigen::VectorXd s = M_PI * cumulative_trapezoid(rho2_fn);
  s *= 2.0 * M_PI / s[n - 1];

  BridgeReport rep;
  rep.s_of_x = GridFunction(u1.grid, s);

  const UniformGrid sgrid = closed_grid(0.0, 2.0 * M_PI, s_points);
  const Eigen::VectorXd snodes = sgrid.nodes();
  rep.R = GridFunction(sgrid, interpolant(s, rho2)(snodes));
  rep.phi = GridFunction(sgrid, interpolant(s, (2.0 * theta).eval())(snodes));
  rep.kappa = derivative(rep.phi);

  GridFunction dR = derivative(rep.R);
  GridFunction integrand(
      sgrid, (dR.values.array().square() +
              rep.R.values.array().square() * rep.kappa.values.array().square())
                 .matrix());
  rep.lhs_311 = trapezoid(integrand);
  GridFunction R2(sgrid, rep.R.values.array().square().matrix());
  rep.rhs_311 = trapezoid(R2);

  GridFunction du1 = derivative(u1), du2 = derivative(u2);
  rep.lhs_34 = inner(du1, du1) + inner(du2, du2);
  GridFunction rho6(u1.grid, rho2.array().cube().matrix());
  rep.rhs_34 = 0.25 * M_PI * M_PI * trapezoid(rho6);

  GridFunction cphi(sgrid, rep.phi.values.array().cos().matrix());
  GridFunction sphi(sgrid, rep.phi.values.array().sin().matrix());
  rep.closure = {trapezoid(cphi), trapezoid(sphi)};

  rep.ratio_34 = rep.lhs_34 / rep.rhs_34;
  rep.ratio_311 = rep.lhs_311 / rep.rhs_311;
  rep.R_boundary = {rep.R.values[0], rep.R.values[s_points - 1]};
  rep.winding = (rep.phi.values[s_points - 1] - rep.phi.values[0]) / (2.0 * M_PI);
  return rep;
}

double functional_ratio_pair(const GridFunction& u1, const GridFunction& u2) {
  if (!(u1.grid == u2.grid)) fail(errc::contract_violation, "pair needs a common grid");
  check_normalized(u1, 1e-8, "u1");
  check_normalized(u2, 1e-8, "u2");
  if (std::abs(inner(u1, u2)) > 1e-8) fail(errc::contract_violation, "pair is not orthogonal");
  GridFunction du1 = derivative(u1), du2 = derivative(u2);
  Eigen::VectorXd rho2 = u1.values.array().square() + u2.values.array().square();
  GridFunction rho6(u1.grid, rho2.array().cube().matrix());
  return (inner(du1, du1) + inner(du2, du2)) / (0.25 * M_PI * M_PI * trapezoid(rho6));
}

XYReport xy_interpretation(const GridFunction& R, const GridFunction& phi) {
  if (!(R.grid == phi.grid)) fail(errc::contract_violation, "R and phi need a common grid");
  if (R.values.minCoeff() < -1e-12) fail(errc::contract_violation, "R must be nonnegative");
  const int n = R.size();

  GridFunction dR = derivative(R);
  GridFunction dphi(phi.grid, Eigen::VectorXd(n));
  if (phi.grid.periodic) {
    // phi may carry an integer number of turns per period; differentiate the
    // periodic remainder and add the linear rate back
    const double span = phi.grid.end - phi.grid.start;
    const double h = phi.grid.spacing();
    const double turns = std::round((phi.values[n - 1] - phi.values[0]) / (span - h));
    Eigen::VectorXd remainder =
        phi.values - turns * phi.grid.nodes();
    GridFunction rem_fn(phi.grid, remainder);
    dphi.values = derivative(rem_fn).values.array() + turns;
  } else {
    dphi = derivative(phi);
  }

  Eigen::VectorXd cphi = phi.values.array().cos(), sphi = phi.values.array().sin();
  Eigen::VectorXd x = R.values.cwiseProduct(cphi), y = R.values.cwiseProduct(sphi);
  Eigen::VectorXd xdot = dR.values.cwiseProduct(cphi) - R.values.cwiseProduct(dphi.values).cwiseProduct(sphi);
  Eigen::VectorXd ydot = dR.values.cwiseProduct(sphi) + R.values.cwiseProduct(dphi.values).cwiseProduct(cphi);

  XYReport rep;
  GridFunction num(R.grid, (xdot.array().square() + ydot.array().square()).matrix());
  GridFunction den(R.grid, (x.array().square() + y.array().square()).matrix());
  rep.ratio_316 = trapezoid(num) / trapezoid(den);

  // x/sqrt(x^2+y^2) = cos phi wherever R > 0 and extends continuously to the
  // interval ends where a bridge-produced R legitimately vanishes; an interior
  // zero means the loop passes through the origin and the integrand is
  // genuinely undefined there
  Eigen::VectorXd cx(n), cy(n);
  for (int j = 0; j < n; ++j) {
    if (R.values[j] == 0.0) {
      const bool endpoint = !R.grid.periodic && (j == 0 || j == n - 1);
      if (!endpoint)
        fail_at(errc::node_error, "constraint integrand undefined where R = 0", R.grid.node(j));
    }
    cx[j] = cphi[j];
    cy[j] = sphi[j];
  }
  rep.constraint_residuals = {trapezoid(GridFunction(R.grid, cx)),
                              trapezoid(GridFunction(R.grid, cy))};
  return rep;
}

}  // namespace ovallab
