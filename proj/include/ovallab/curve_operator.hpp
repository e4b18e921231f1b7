#ifndef OVALLAB_CURVE_OPERATOR_HPP
#define OVALLAB_CURVE_OPERATOR_HPP

#include "ovallab/curve.hpp"
#include "ovallab/numerics.hpp"

namespace ovallab {

/// Discretization request for -d^2/ds^2 + g*kappa^2 on the curve with
/// periodic boundary conditions. For fourier_galerkin the resolution counts
/// modes per side (matrix dimension 2*resolution + 1); for finite_difference
/// it is the number of grid points.
struct CurveOperatorSpec {
  CurveSpec curve;
  double coupling = 1.0;
  int resolution = 64;
  DiscretizationMethod method = DiscretizationMethod::fourier_galerkin;
  bool require_convex = true;  // kappa > 0 validation; relax to probe the wider family
};

SymmetricMatrix build_operator(const CurveOperatorSpec& spec);

/// k smallest eigenpairs; eigenfunctions are unit-L2 samples on a periodic
/// output grid. A silent recompute at 1.5x resolution sets refinement_flagged
/// when the ground eigenvalue moves by more than 1e-8.
Spectrum lowest_eigs(const CurveOperatorSpec& spec, int k);

/// Analytic circle spectrum {n^2 + g}, ascending, first k.
Spectrum circle_spectrum(double g, int k);

/// Fourier-side lower-bound data for the ground state at coupling g = 1:
/// the mode-0 weight of e^{i phi} f is at most 1/2, so the quadratic form
/// keeps at least 1/2 from the nonzero modes.
struct HalfBoundCertificate {
  double c0_sq = 0.0;
  double parseval_residual = 0.0;
  double quadratic_form = 0.0;          // Rayleigh value of the ground state
  double fourier_sum = 0.0;             // sum n^2 |c_n|^2
  double certified_lower_bound = 0.0;   // sum over n != 0 of |c_n|^2
  bool sign_warning = false;            // ground state dipped below -1e-8
};

HalfBoundCertificate halfbound_certificate(const CurveOperatorSpec& spec);

}  // namespace ovallab

#endif
