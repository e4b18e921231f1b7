#ifndef OVALLAB_SCHRODINGER_HPP
#define OVALLAB_SCHRODINGER_HPP

#include <string>
#include <utility>
#include <vector>

#include "ovallab/numerics.hpp"

namespace ovallab {

enum class PotentialFamily { poschl_teller, gaussian, square_well, tabulated };

/// Nonnegative well profile V >= 0; the line operator is -d^2/dx^2 - V.
class PotentialSpec {
 public:
  static PotentialSpec poschl_teller(double a);
  static PotentialSpec gaussian(double depth, double width);
  static PotentialSpec square_well(double depth, double half_width);
  static PotentialSpec tabulated(GridFunction samples);

  double operator()(double x) const;
  double max_value() const;
  PotentialFamily family() const { return family_; }
  std::string describe() const;

 private:
  PotentialSpec() = default;
  PotentialFamily family_ = PotentialFamily::square_well;
  double p1_ = 0.0, p2_ = 0.0;
  GridFunction table_;
};

/// `family:key=value,...` per the CLI mini-language, e.g. `poschl_teller:a=6`,
/// `gaussian:depth=5,width=1`, `tabulated:path=file.csv`.
PotentialSpec parse_potential(const std::string& text);

struct BoundStateOptions {
  double half_width = 20.0;  // Dirichlet walls at +-L
  int points = 4001;         // odd, >= 501
};

/// k lowest eigenpairs of the Dirichlet finite-difference discretization of
/// -d^2/dx^2 - V on [-L, L]. Eigenfunctions are returned on the full grid
/// (boundary nodes included, zero there) with unit quadrature norm; the
/// ground state is flipped nonnegative. negative_count records how many of
/// the k returned eigenvalues are bound states.
Spectrum bound_states(const PotentialSpec& v, int k, BoundStateOptions opt = {});

/// |lambda - (int V u^2 - int u'^2)| with centered differences; converged
/// eigenpairs stay below 1e-5.
double rayleigh_identity_check(const GridFunction& u, const PotentialSpec& v, double lambda);

struct LTReport {
  double gamma = 0.0;
  std::vector<double> eigenvalues;  // magnitudes of the negative eigenvalues used
  double moment_sum = 0.0;
  double potential_integral = 0.0;
  double ratio = 0.0;
  double reference_constant = 0.0;
  double margin = 0.0;
  int states = 0;
};

/// Ratio of the gamma-moment of the lowest `states` bound states to
/// int V^(gamma+1/2) dx, against the one-bound-state reference constant.
LTReport lt_ratio(const PotentialSpec& v, double gamma, int states, BoundStateOptions opt = {});

/// Orthonormal lowest two eigenfunctions; requires two bound states.
std::pair<GridFunction, GridFunction> eigenfunction_pair(const PotentialSpec& v,
                                                         BoundStateOptions opt = {});

/// int V(x)^power dx over [-L, L] by trapezoid refinement to ~1e-12.
double potential_integral(const PotentialSpec& v, double power, double half_width);

}  // namespace ovallab

#endif
