#ifndef OVALLAB_CONSTANTS_HPP
#define OVALLAB_CONSTANTS_HPP

#include <vector>

#include "ovallab/schrodinger.hpp"

namespace ovallab {

/// log Gamma(x) for x > 0, Lanczos approximation, ~1e-14 relative.
double log_gamma(double x);

/// Optimal constant for the single bound state moment bound,
/// L(gamma) = (1/sqrt(pi)) (1/(gamma-1/2)) Gamma(gamma+1)/Gamma(gamma+1/2)
///            * ((gamma-1/2)/(gamma+1/2))^(gamma+1/2),  gamma > 1/2.
double keller_constant(double gamma);

/// Phase-space constant 2^-n pi^(-n/2) Gamma(gamma+1)/Gamma(gamma+1+n/2).
double semiclassical_constant(double gamma, int n);

struct AppendixConstants {
  double c;        // Sobolev-step constant; c(1) = pi^2/4
  double c_tilde;  // optimized single-state constant; c_tilde(gamma)^gamma = keller_constant
};
AppendixConstants appendix_constants(double gamma);

struct KnownBounds {
  double eden_foias;           // 2 sqrt(3) / 9
  double two_state_halfbound;  // 4 sqrt(6) / (9 pi)
  double conjectured_L11;      // 4 sqrt(3) / (9 pi)
  double proven_L_half;        // 1/2
};
KnownBounds known_bounds_table();

/// Splitting weight K(c) = 2/(3 sqrt(3 c)) that balances the AM-GM split
/// against a Poincare constant c; c = pi^2/4 reproduces 4/(3 sqrt(3) pi).
double optimal_splitting_weight(double poincare_constant);

struct ConstantsRow {
  double gamma, L1, Lc, c_gamma, c_tilde, identity_residual, ratio_R;
};
ConstantsRow constants_row(double gamma);

struct SplitReport {
  bool split_ok = false;
  double bound_value = 0.0;    // K int V^{3/2} + 4/(27 K^2) int density^3 - kinetic
  double final_bound = 0.0;    // L(1) int V^{3/2}
  double max_violation = 0.0;  // worst pointwise AM-GM deficit over the grid
  double lambda_sum = 0.0;     // eigenvalue magnitude(s) being bounded
};

/// Pointwise check V u^2 <= K V^{3/2} + 4/(27 K^2) u^6 on every node, then
/// the eigenvalue bound it implies; u1 must be the normalized ground state.
SplitReport keller_certificate(const PotentialSpec& v, const GridFunction& u1, double K);

/// Two-state variant with density u1^2 + u2^2 bounding lambda1 + lambda2.
SplitReport keller_certificate_pair(const PotentialSpec& v, const GridFunction& u1,
                                    const GridFunction& u2, double K);

struct SobolevReport {
  double lhs = 0.0;  // (1/4) int wdot^2
  double rhs = 0.0;  // c(gamma) (int w^{2/(2 gamma - 1)})^{2 gamma - 1}
  bool holds = false;
};

/// Interval Sobolev inequality check for nonnegative w on [0,1] with
/// w(0) = w(1) = 0.
SobolevReport sobolev_check(const GridFunction& w, double gamma);

struct ChainReport {
  double gamma = 0.0;
  double lambda1 = 0.0;
  double A = 0.0;  // (int V^{gamma+1/2})^{2/(2 gamma+1)}
  double Y = 0.0;  // (int u^{2(2 gamma+1)/(2 gamma-1)})^{2 gamma-1}
  double holder_rhs = 0.0;    // A Y^{1/(2 gamma+1)} - kinetic
  double a2_rhs = 0.0;        // A Y^{1/(2 gamma+1)} - c(gamma) Y
  double final_rhs = 0.0;     // (keller * int V^{gamma+1/2})^{1/gamma}
  bool holder_ok = false;
  bool a2_ok = false;
  bool final_ok = false;
};

/// End-to-end verification of the Holder + Sobolev + Y-optimization chain for
/// a single-bound-state potential.
ChainReport appendix_chain_check(const PotentialSpec& v, double gamma, BoundStateOptions opt = {});

}  // namespace ovallab

#endif
