#include "ovallab/constants.hpp"

#include <cmath>

namespace ovallab {

double log_gamma(double x) {
  if (!(x > 0)) fail(errc::domain_error, "log_gamma needs x > 0");
  // Lanczos, g = 7, 9 terms
  static const double coeff[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double acc = coeff[0];
  for (int i = 1; i < 9; ++i) acc += coeff[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double keller_constant(double gamma) {
  if (!(gamma > 0.5)) fail(errc::domain_error, "constant defined for gamma > 1/2");
  const double lg = log_gamma(gamma + 1.0) - log_gamma(gamma + 0.5);
  const double ratio = (gamma - 0.5) / (gamma + 0.5);
  return std::exp(-0.5 * std::log(M_PI) - std::log(gamma - 0.5) + lg +
                  (gamma + 0.5) * std::log(ratio));
}

double semiclassical_constant(double gamma, int n) {
  if (gamma < 0 || n < 1) fail(errc::domain_error, "needs gamma >= 0 and n >= 1");
  return std::exp(-n * std::log(2.0) - 0.5 * n * std::log(M_PI) + log_gamma(gamma + 1.0) -
                  log_gamma(gamma + 1.0 + 0.5 * n));
}

AppendixConstants appendix_constants(double gamma) {
  if (!(gamma > 0.5)) fail(errc::domain_error, "constants defined for gamma > 1/2");
  const double log_inner = 0.5 * std::log(0.5 * M_PI) + gamma * std::log(gamma) +
                           log_gamma(gamma + 0.5) - log_gamma(gamma + 1.0) -
                           (gamma - 0.5) * std::log(gamma - 0.5);
  const double c = std::exp(2.0 * log_inner);
  const double log_ct = std::log(2.0 * gamma) - log_inner / gamma -
                        (2.0 * gamma + 1.0) / (2.0 * gamma) * std::log(2.0 * gamma + 1.0);
  return {c, std::exp(log_ct)};
}

KnownBounds known_bounds_table() {
  return {2.0 * std::sqrt(3.0) / 9.0, 4.0 * std::sqrt(6.0) / (9.0 * M_PI),
          4.0 * std::sqrt(3.0) / (9.0 * M_PI), 0.5};
}

double optimal_splitting_weight(double poincare_constant) {
  if (!(poincare_constant > 0)) fail(errc::domain_error, "needs a positive constant");
  return 2.0 / (3.0 * std::sqrt(3.0 * poincare_constant));
}

ConstantsRow constants_row(double gamma) {
  const double L1 = keller_constant(gamma);
  const double Lc = semiclassical_constant(gamma, 1);
  const auto [c, ct] = appendix_constants(gamma);
  const double residual = std::abs(std::pow(ct, gamma) - L1);
  return {gamma, L1, Lc, c, ct, residual, L1 / Lc};
}

namespace {

SplitReport split_report(const PotentialSpec& v, const GridFunction& density, double kinetic,
                         double lambda_sum, double K) {
  if (!(K > 0)) fail(errc::domain_error, "splitting weight must be positive");
  const auto& g = density.grid;
  double worst = 0.0;
  for (int j = 0; j < g.points; ++j) {
    const double x = g.node(j);
    const double vv = v(x);
    const double d = density.values[j];
    const double lhs = vv * d;
    const double rhs = K * std::pow(vv, 1.5) + 4.0 / (27.0 * K * K) * d * d * d;
    worst = std::max(worst, lhs - rhs);
  }
  SplitReport rep;
  rep.max_violation = worst;
  const double scale = std::max(1.0, v.max_value());
  rep.split_ok = worst <= 1e-12 * scale;
  if (!rep.split_ok)
    fail(errc::numerical_failure, "pointwise splitting bound violated by " + std::to_string(worst));

  const double v32 = potential_integral(v, 1.5, g.periodic ? g.end : std::abs(g.start));
  GridFunction cube(g, density.values.array().cube().matrix());
  rep.bound_value = K * v32 + 4.0 / (27.0 * K * K) * trapezoid(cube) - kinetic;
  rep.final_bound = keller_constant(1.0) * v32;
  rep.lambda_sum = lambda_sum;
  return rep;
}

double lowest_eig_for(const PotentialSpec& v, const UniformGrid& g, int k, double& second) {
  BoundStateOptions opt;
  opt.half_width = std::abs(g.start);
  opt.points = g.points;
  auto spec = bound_states(v, k, opt);
  second = k > 1 ? spec.eigenvalues[1] : 0.0;
  return spec.eigenvalues[0];
}

}  // namespace

SplitReport keller_certificate(const PotentialSpec& v, const GridFunction& u1, double K) {
  const double nrm = inner(u1, u1);
  if (std::abs(nrm - 1.0) > 1e-6) fail(errc::contract_violation, "ground state not normalized");
  GridFunction density(u1.grid, u1.values.array().square().matrix());
  GridFunction du = derivative(u1);
  const double kinetic = inner(du, du);
  double second = 0.0;
  const double lambda1 = -lowest_eig_for(v, u1.grid, 1, second);
  auto rep = split_report(v, density, kinetic, lambda1, K);
  if (lambda1 > rep.bound_value + 1e-6)
    fail(errc::numerical_failure, "eigenvalue exceeds its splitting bound");
  return rep;
}

SplitReport keller_certificate_pair(const PotentialSpec& v, const GridFunction& u1,
                                    const GridFunction& u2, double K) {
  GridFunction density(u1.grid,
                       (u1.values.array().square() + u2.values.array().square()).matrix());
  GridFunction du1 = derivative(u1), du2 = derivative(u2);
  const double kinetic = inner(du1, du1) + inner(du2, du2);
  double second = 0.0;
  const double l1 = lowest_eig_for(v, u1.grid, 2, second);
  const double lambda_sum = -(l1 + second);
  auto rep = split_report(v, density, kinetic, lambda_sum, K);
  if (lambda_sum > rep.bound_value + 1e-6)
    fail(errc::numerical_failure, "eigenvalue sum exceeds its splitting bound");
  return rep;
}

SobolevReport sobolev_check(const GridFunction& w, double gamma) {
  if (w.values.minCoeff() < 0) fail(errc::domain_error, "w must be nonnegative");
  if (w.grid.periodic) fail(errc::contract_violation, "w lives on the closed interval [0,1]");
  GridFunction dw = derivative4(w);
  SobolevReport rep;
  rep.lhs = 0.25 * inner(dw, dw);
  const double p = 2.0 / (2.0 * gamma - 1.0);
  GridFunction wp(w.grid, w.values.array().pow(p).matrix());
  rep.rhs = appendix_constants(gamma).c * std::pow(trapezoid(wp), 2.0 * gamma - 1.0);
  rep.holds = rep.lhs >= rep.rhs - 1e-9;
  return rep;
}

ChainReport appendix_chain_check(const PotentialSpec& v, double gamma, BoundStateOptions opt) {
  if (!(gamma > 0.5)) fail(errc::domain_error, "needs gamma > 1/2");
  auto spec = bound_states(v, 1, opt);
  if (spec.negative_count < 1) fail(errc::insufficient_bound_states, "potential binds no state");
  const GridFunction& u = spec.eigenfunctions[0];
  const double lambda1 = -spec.eigenvalues[0];

  ChainReport rep;
  rep.gamma = gamma;
  rep.lambda1 = lambda1;
  const double vint = potential_integral(v, gamma + 0.5, opt.half_width);
  rep.A = std::pow(vint, 2.0 / (2.0 * gamma + 1.0));
  const double up = 2.0 * (2.0 * gamma + 1.0) / (2.0 * gamma - 1.0);
  GridFunction upow(u.grid, u.values.array().abs().pow(up).matrix());
  rep.Y = std::pow(trapezoid(upow), 2.0 * gamma - 1.0);

  GridFunction du = derivative(u);
  const double kinetic = inner(du, du);
  rep.holder_rhs = rep.A * std::pow(rep.Y, 1.0 / (2.0 * gamma + 1.0)) - kinetic;
  rep.a2_rhs = rep.A * std::pow(rep.Y, 1.0 / (2.0 * gamma + 1.0)) - appendix_constants(gamma).c * rep.Y;
  rep.final_rhs = std::pow(keller_constant(gamma) * vint, 1.0 / gamma);
  rep.holder_ok = lambda1 <= rep.holder_rhs + 1e-8;
  rep.a2_ok = lambda1 <= rep.a2_rhs + 1e-8;
  rep.final_ok = lambda1 <= rep.final_rhs + 1e-8;
  return rep;
}

}  // namespace ovallab
