#include "ovallab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ovallab {

Spectrum symmetric_eigs(const SymmetricMatrix& m, int k) {
  const Eigen::Index n = m.dimension();
  if (k < 1 || k > n) fail(errc::contract_violation, "eigenpair count outside [1, dimension]");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries());
  if (solver.info() != Eigen::Success)
    fail(errc::numerical_failure,
         "symmetric eigensolver did not converge within its iteration cap (dimension " +
             std::to_string(n) + ")");

  Spectrum out;
  out.eigenvalues = solver.eigenvalues().head(k);
  out.eigenvectors = solver.eigenvectors().leftCols(k);
  // deterministic sign: first component of non-negligible magnitude positive
  for (int j = 0; j < k; ++j) {
    auto col = out.eigenvectors.col(j);
    const double scale = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col[i]) > 1e-12 * scale) {
        if (col[i] < 0) col = -col;
        break;
      }
    }
  }
  out.resolution = static_cast<int>(n);
  out.negative_count = static_cast<int>((out.eigenvalues.array() < 0.0).count());
  return out;
}

namespace {

// Number of eigenvalues of the tridiagonal matrix at or below x (Sturm
// sequence on the shifted LDL^T pivots; a zero pivot counts as negative,
// otherwise exact hits such as Toeplitz midpoints are miscounted).
int sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
  const int n = static_cast<int>(d.size());
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = d[0] - x;
  if (q <= 0) ++count;
  for (int i = 1; i < n; ++i) {
    if (q == 0.0)
      q = -tiny;
    else if (std::abs(q) < tiny)
      q = std::copysign(tiny, q);
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q <= 0) ++count;
  }
  return count;
}

// Solve (T - sigma I) x = b by LU with partial pivoting specialised to the
// tridiagonal band; overwrites b with the solution.
void shifted_tridiagonal_solve(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double sigma,
                               Eigen::VectorXd& b) {
  const int n = static_cast<int>(d.size());
  Eigen::VectorXd diag = d.array() - sigma;
  Eigen::VectorXd lower = e, upper = e;
  Eigen::VectorXd upper2 = Eigen::VectorXd::Zero(std::max(n - 2, 0));
  const double tiny = 1e-300;

  for (int i = 0; i < n - 1; ++i) {
    if (std::abs(diag[i]) >= std::abs(lower[i])) {
      if (std::abs(diag[i]) < tiny) diag[i] = tiny;
      const double m = lower[i] / diag[i];
      diag[i + 1] -= m * upper[i];
      b[i + 1] -= m * b[i];
      lower[i] = 0.0;
      if (i < n - 2) upper2[i] = 0.0;
    } else {
      // swap rows i and i+1
      const double m = diag[i] / lower[i];
      std::swap(b[i], b[i + 1]);
      const double du = diag[i + 1];
      diag[i] = lower[i];
      diag[i + 1] = upper[i] - m * du;
      upper[i] = du;
      if (i < n - 2) {
        upper2[i] = upper[i + 1];
        upper[i + 1] = -m * upper2[i];
      }
      b[i + 1] -= m * b[i];
      lower[i] = 0.0;
    }
  }
  if (std::abs(diag[n - 1]) < tiny) diag[n - 1] = tiny;
  b[n - 1] /= diag[n - 1];
  if (n >= 2) b[n - 2] = (b[n - 2] - upper[n - 2] * b[n - 1]) / diag[n - 2];
  for (int i = n - 3; i >= 0; --i)
    b[i] = (b[i] - upper[i] * b[i + 1] - upper2[i] * b[i + 2]) / diag[i];
}

}  // namespace

TridiagonalEigs tridiagonal_smallest(const Eigen::VectorXd& d, const Eigen::VectorXd& e, int k) {
  const int n = static_cast<int>(d.size());
  if (e.size() != n - 1) fail(errc::contract_violation, "off-diagonal length must be n-1");
  if (k < 1 || k > n) fail(errc::contract_violation, "eigenpair count outside [1, dimension]");

  // Gershgorin bounds
  double lo = d[0], hi = d[0];
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i < n - 1 ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }

  TridiagonalEigs out;
  out.values.resize(k);
  out.vectors.resize(n, k);

  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    for (int iter = 0; iter < 100 && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b));
         ++iter) {
      const double mid = 0.5 * (a + b);
      (sturm_count(d, e, mid) >= j + 1 ? b : a) = mid;
    }
    out.values[j] = 0.5 * (a + b);
  }

  // inverse iteration; the slight shift keeps the factorisation regular
  for (int j = 0; j < k; ++j) {
    const double span = std::max(hi - lo, 1.0);
    const double sigma = out.values[j] + 1e-12 * span;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    for (int i = 0; i < n; ++i) v[i] += 1e-3 * std::cos(2.7 * (i + 1));  // break symmetry
    v.normalize();
    for (int iter = 0; iter < 4; ++iter) {
      shifted_tridiagonal_solve(d, e, sigma, v);
      for (int p = 0; p < j; ++p) v -= out.vectors.col(p).dot(v) * out.vectors.col(p);
      const double norm = v.norm();
      if (!(norm > 0) || !std::isfinite(norm))
        fail(errc::numerical_failure, "inverse iteration broke down");
      v /= norm;
    }
    // residual check against the bisected eigenvalue
    Eigen::VectorXd tv = d.cwiseProduct(v);
    for (int i = 0; i < n - 1; ++i) {
      tv[i] += e[i] * v[i + 1];
      tv[i + 1] += e[i] * v[i];
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if ((tv - out.values[j] * v).norm() > 1e-8 * std::max(scale, 1.0))
      fail(errc::numerical_failure, "inverse iteration residual too large for eigenvalue " +
                                        std::to_string(out.values[j]));
    if (v.cwiseAbs().maxCoeff() > 0) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(v[i]) > 1e-6 * v.cwiseAbs().maxCoeff()) {
          if (v[i] < 0) v = -v;
          break;
        }
      }
    }
    out.vectors.col(j) = v;
  }
  return out;
}

std::vector<std::complex<double>> fourier_coefficients(const GridFunction& f, int max_mode) {
  GridFunction zero(f.grid, Eigen::VectorXd::Zero(f.size()));
  return fourier_coefficients(f, zero, max_mode);
}

std::vector<std::complex<double>> fourier_coefficients(const GridFunction& re,
                                                       const GridFunction& im, int max_mode) {
  if (!re.grid.periodic) fail(errc::contract_violation, "Fourier coefficients need a periodic grid");
  if (!(re.grid == im.grid)) fail(errc::contract_violation, "re/im parts need a common grid");
  if (2 * max_mode + 1 > re.grid.points)
    fail(errc::resolution_error, "grid too coarse for requested mode count");

  const int n = re.size();
  const double h = re.grid.spacing();
  const double norm = h / std::sqrt(2.0 * M_PI);
  std::vector<std::complex<double>> out(2 * max_mode + 1);
  for (int m = -max_mode; m <= max_mode; ++m) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = re.grid.start + j * h;
      const std::complex<double> val(re.values[j], im.values[j]);
      acc += val * std::polar(1.0, -m * s);
    }
    out[m + max_mode] = acc * norm;
  }
  return out;
}

}  // namespace ovallab
