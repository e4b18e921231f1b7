#include "ovallab/curve_operator.hpp"

#include <algorithm>
#include <cmath>

namespace ovallab {

namespace {

void validate(const CurveOperatorSpec& spec) {
  if (spec.resolution < 8) fail(errc::contract_violation, "resolution must be >= 8");
  if (spec.require_convex) {
    const UniformGrid g = reference_grid(spec.curve);
    curvature(spec.curve, g);  // throws positivity_violation with location
  }
}

// Real Fourier data of W = g * kappa^2: A[k] ~ cos-side, B[k] ~ sin-side,
// computed by oversampled periodic quadrature (exact for band-limited kappa).
struct PotentialModes {
  Eigen::VectorXd A;  // A[0] = mean, A[k] = (1/pi) int W cos ks
  Eigen::VectorXd B;  // B[k] = (1/pi) int W sin ks, B[0] unused
};

PotentialModes potential_modes(const CurveSpec& c, double g, int max_k) {
  const int sample_points =
      std::max({512, 8 * max_k + 16, 8 * c.max_harmonic() + 16});
  const UniformGrid grid = periodic_grid(0.0, 2.0 * M_PI, sample_points);
  Eigen::VectorXd w(sample_points);
  for (int j = 0; j < sample_points; ++j) {
    const double kappa = c.curvature_at(grid.node(j));
    w[j] = g * kappa * kappa;
  }
  const double h = grid.spacing();
  PotentialModes pm;
  pm.A.setZero(max_k + 1);
  pm.B.setZero(max_k + 1);
  for (int k = 0; k <= max_k; ++k) {
    double ac = 0.0, as = 0.0;
    for (int j = 0; j < sample_points; ++j) {
      const double s = grid.node(j);
      ac += w[j] * std::cos(k * s);
      as += w[j] * std::sin(k * s);
    }
    pm.A[k] = ac * h / (k == 0 ? 2.0 * M_PI : M_PI);
    pm.B[k] = as * h / M_PI;
  }
  return pm;
}

Eigen::MatrixXd galerkin_matrix(const CurveOperatorSpec& spec) {
  const int R = spec.resolution;
  const int dim = 2 * R + 1;
  const PotentialModes pm = potential_modes(spec.curve, spec.coupling, 2 * R);

  auto a_tilde = [&](int k) { return k == 0 ? pm.A[0] : 0.5 * pm.A[k]; };
  auto b_tilde = [&](int k) { return k == 0 ? 0.0 : 0.5 * pm.B[k]; };

  // basis order: 1/sqrt(2 pi), then cos(ms)/sqrt(pi), sin(ms)/sqrt(pi)
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  m(0, 0) = pm.A[0];
  for (int n = 1; n <= R; ++n) {
    const int cn = 2 * n - 1, sn = 2 * n;
    m(cn, cn) += double(n) * n;
    m(sn, sn) += double(n) * n;
    m(0, cn) = m(cn, 0) = pm.A[n] / std::sqrt(2.0);
    m(0, sn) = m(sn, 0) = pm.B[n] / std::sqrt(2.0);
  }
  for (int a = 1; a <= R; ++a) {
    for (int b = 1; b <= R; ++b) {
      const int ca = 2 * a - 1, sa = 2 * a, cb = 2 * b - 1, sb = 2 * b;
      const int diff = std::abs(a - b), sum = a + b;
      m(ca, cb) += a_tilde(diff) + a_tilde(sum);
      m(sa, sb) += a_tilde(diff) - a_tilde(sum);
      // <cos(a s)|W|sin(b s)>
      const int sgn = (b - a) > 0 ? 1 : ((b - a) < 0 ? -1 : 0);
      m(ca, sb) += b_tilde(sum) + sgn * b_tilde(diff);
      m(sb, ca) = m(ca, sb);
    }
  }
  return m;
}

Eigen::MatrixXd fd_matrix(const CurveOperatorSpec& spec) {
  const int n = spec.resolution;
  const UniformGrid grid = periodic_grid(0.0, 2.0 * M_PI, n);
  const double h = grid.spacing();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double kappa = spec.curve.curvature_at(grid.node(j));
    m(j, j) = 2.0 / (h * h) + spec.coupling * kappa * kappa;
    m(j, (j + 1) % n) -= 1.0 / (h * h);
    m(j, (j + n - 1) % n) -= 1.0 / (h * h);
  }
  return m;
}

Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs, const UniformGrid& out) {
  const int R = (static_cast<int>(coeffs.size()) - 1) / 2;
  Eigen::VectorXd f(out.points);
  const double c0 = 1.0 / std::sqrt(2.0 * M_PI);
  const double cn = 1.0 / std::sqrt(M_PI);
  for (int j = 0; j < out.points; ++j) {
    const double s = out.node(j);
    double acc = coeffs[0] * c0;
    for (int n = 1; n <= R; ++n)
      acc += cn * (coeffs[2 * n - 1] * std::cos(n * s) + coeffs[2 * n] * std::sin(n * s));
    f[j] = acc;
  }
  return f;
}

UniformGrid output_grid(int resolution) {
  return periodic_grid(0.0, 2.0 * M_PI, std::max(256, 4 * resolution));
}

Eigen::VectorXd eigenvalues_only(const CurveOperatorSpec& spec, int k) {
  const Eigen::MatrixXd m = spec.method == DiscretizationMethod::fourier_galerkin
                                ? galerkin_matrix(spec)
                                : fd_matrix(spec);
  return symmetric_eigs(SymmetricMatrix(m), k).eigenvalues;
}

}  // namespace

SymmetricMatrix build_operator(const CurveOperatorSpec& spec) {
  validate(spec);
  return SymmetricMatrix(spec.method == DiscretizationMethod::fourier_galerkin
                             ? galerkin_matrix(spec)
                             : fd_matrix(spec));
}

Spectrum lowest_eigs(const CurveOperatorSpec& spec, int k) {
  validate(spec);
  const Eigen::MatrixXd m = spec.method == DiscretizationMethod::fourier_galerkin
                                ? galerkin_matrix(spec)
                                : fd_matrix(spec);
  Spectrum out = symmetric_eigs(SymmetricMatrix(m), k);
  out.resolution = spec.resolution;
  out.method = spec.method;

  const UniformGrid grid = spec.method == DiscretizationMethod::fourier_galerkin
                               ? output_grid(spec.resolution)
                               : periodic_grid(0.0, 2.0 * M_PI, spec.resolution);
  out.eigenfunctions.clear();
  out.eigenfunctions.reserve(k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd vals = spec.method == DiscretizationMethod::fourier_galerkin
                               ? synthesize(out.eigenvectors.col(j), grid)
                               : Eigen::VectorXd(out.eigenvectors.col(j) /
                                                 std::sqrt(grid.spacing()));
    GridFunction f(grid, std::move(vals));
    f.values /=
        std::sqrt(trapezoid_periodic(GridFunction(grid, f.values.array().square().matrix())));
    if (j == 0 && trapezoid_periodic(f) < 0) f.values = -f.values;
    out.eigenfunctions.push_back(std::move(f));
  }

  // two-resolution agreement check at 1.5x
  CurveOperatorSpec refined = spec;
  refined.resolution = (3 * spec.resolution + 1) / 2;
  const Eigen::VectorXd lam2 = eigenvalues_only(refined, 1);
  out.refinement_delta = std::abs(lam2[0] - out.eigenvalues[0]);
  out.refinement_flagged = out.refinement_delta > 1e-8;
  return out;
}

Spectrum circle_spectrum(double g, int k) {
  if (k < 1) fail(errc::contract_violation, "need k >= 1");
  std::vector<double> vals;
  vals.push_back(g);
  for (int n = 1; static_cast<int>(vals.size()) < k; ++n) {
    vals.push_back(double(n) * n + g);
    vals.push_back(double(n) * n + g);
  }
  std::sort(vals.begin(), vals.end());
  Spectrum out;
  out.eigenvalues = Eigen::Map<Eigen::VectorXd>(vals.data(), k);
  out.method = DiscretizationMethod::fourier_galerkin;
  out.negative_count = static_cast<int>((out.eigenvalues.array() < 0.0).count());
  return out;
}

HalfBoundCertificate halfbound_certificate(const CurveOperatorSpec& spec) {
  if (spec.coupling != 1.0)
    fail(errc::unsupported_coupling, "the Fourier lower-bound argument needs g = 1");
  Spectrum ground = lowest_eigs(spec, 1);
  GridFunction f = ground.eigenfunctions[0];

  HalfBoundCertificate cert;
  const double fmax = f.values.cwiseAbs().maxCoeff();
  if (f.values.minCoeff() < -1e-8 * fmax) cert.sign_warning = true;

  const GridFunction phi = turning_angle(spec.curve, f.grid);
  GridFunction re(f.grid, f.values.cwiseProduct(phi.values.array().cos().matrix()));
  GridFunction im(f.grid, f.values.cwiseProduct(phi.values.array().sin().matrix()));
  const int max_mode = std::min(2 * spec.resolution, (f.grid.points - 1) / 2);
  const auto coeffs = fourier_coefficients(re, im, max_mode);

  double total = 0.0, weighted = 0.0;
  for (int n = -max_mode; n <= max_mode; ++n) {
    const double mag2 = std::norm(coeffs[n + max_mode]);
    total += mag2;
    weighted += double(n) * n * mag2;
    if (n != 0) cert.certified_lower_bound += mag2;
  }
  cert.c0_sq = std::norm(coeffs[max_mode]);
  cert.parseval_residual = std::abs(total - 1.0);
  cert.fourier_sum = weighted;
  cert.quadratic_form = ground.eigenvalues[0];

  if (std::abs(cert.fourier_sum - cert.quadratic_form) >
      1e-6 * std::max(1.0, std::abs(cert.quadratic_form)))
    fail(errc::numerical_failure, "Fourier quadratic form disagrees with the Rayleigh value");
  if (cert.c0_sq > 0.5 + 1e-8)
    fail(errc::numerical_failure, "mode-0 weight exceeded 1/2; discretization is inconsistent");
  return cert;
}

}  // namespace ovallab
