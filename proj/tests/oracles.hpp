#ifndef OVALLAB_TEST_ORACLES_HPP
#define OVALLAB_TEST_ORACLES_HPP

// Independent expected values for the test suites: closed-form eigenvalues,
// hyperbolic integrals, and reference stencil eigenvalues. Everything here is
// derived analytically and kept apart from the library code it checks.

#include <cmath>
#include <vector>

namespace oracles {

// Bound states of -u'' - a sech^2(x) u with a = nu (nu + 1):
// e_k = -(nu - k)^2 for k = 0, 1, ..., ceil(nu) - 1.
inline std::vector<double> poschl_teller_levels(double a) {
  const double nu = 0.5 * (std::sqrt(1.0 + 4.0 * a) - 1.0);
  std::vector<double> levels;
  for (int k = 0;; ++k) {
    const double root = nu - k;
    if (root <= 0) break;
    levels.push_back(-root * root);
  }
  return levels;
}

// int sech^(2n) dx over the line: 2, 4/3, 16/15, 32/35, 256/315, 512/693.
inline double sech_power_integral(int two_n) {
  switch (two_n) {
    case 2: return 2.0;
    case 4: return 4.0 / 3.0;
    case 6: return 16.0 / 15.0;
    case 8: return 32.0 / 35.0;
    case 10: return 256.0 / 315.0;
    case 12: return 512.0 / 693.0;
  }
  return 0.0;
}

// int sech^3 dx = pi / 2.
inline double sech_cubed_integral() { return 0.5 * M_PI; }

// Smallest eigenvalue of the (2, -1)/h^2 Dirichlet stencil on n interior
// points with spacing h: 4 sin^2(pi h / 2) / h^2 for the unit interval.
inline double fd_dirichlet_ground(int interior_points) {
  const double h = 1.0 / (interior_points + 1);
  const double s = std::sin(0.5 * M_PI * h);
  return 4.0 * s * s / (h * h);
}

// Exact x-space functionals of the a = 6 pair
// u1 = (sqrt(3)/2) sech^2, u2 = sqrt(3/2) sech tanh:
//   kinetic = int (u1'^2 + u2'^2) = 4/5 + 7/5 = 11/5
//   sextic  = int (u1^2 + u2^2)^3 = (27/64)(8 I6 - 12 I8 + 6 I10 - I12)
inline double pt6_pair_kinetic() { return 11.0 / 5.0; }

inline double pt6_pair_density_cubed() {
  return (27.0 / 64.0) *
         (8.0 * sech_power_integral(6) - 12.0 * sech_power_integral(8) +
          6.0 * sech_power_integral(10) - sech_power_integral(12));
}

inline double pt6_pair_ratio() {
  return pt6_pair_kinetic() / (0.25 * M_PI * M_PI * pt6_pair_density_cubed());
}

}  // namespace oracles

#endif
