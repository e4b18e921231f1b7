#ifndef OVALLAB_NUMERICS_HPP
#define OVALLAB_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ovallab/grid.hpp"

namespace ovallab {

/// Dense real symmetric matrix; asymmetric input is symmetrized on
/// construction as (A + A^T)/2 so Galerkin assembly rounding is harmless.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) fail(errc::contract_violation, "matrix must be square");
    m_ = 0.5 * (m_ + m_.transpose()).eval();
  }

  Eigen::Index dimension() const { return m_.rows(); }
  const Eigen::MatrixXd& entries() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

enum class DiscretizationMethod { fourier_galerkin, finite_difference };

inline const char* method_name(DiscretizationMethod m) {
  return m == DiscretizationMethod::fourier_galerkin ? "fourier_galerkin" : "finite_difference";
}

/// Ordered eigenvalues with optional eigenvector data.
///
/// `eigenvectors` columns are l2-orthonormal coordinate vectors.
/// `eigenfunctions`, when filled by an operator-level solve, are the same
/// modes sampled on the physical grid and normalized to unit quadrature norm.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // one column per eigenvalue; may be empty
  std::vector<GridFunction> eigenfunctions;
  int resolution = 0;
  DiscretizationMethod method = DiscretizationMethod::finite_difference;
  int negative_count = 0;
  bool refinement_flagged = false;
  double refinement_delta = 0.0;
};

/// k smallest eigenpairs of a dense symmetric matrix, ascending, with
/// l2-orthonormal eigenvectors (Householder tridiagonalization + implicit QL).
Spectrum symmetric_eigs(const SymmetricMatrix& m, int k);

/// k smallest eigenpairs of a symmetric tridiagonal matrix via Sturm-sequence
/// bisection plus inverse iteration. O(n) per eigenpair; suited to the large
/// 1-D finite-difference operators where a dense solve is wasteful.
struct TridiagonalEigs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // l2-orthonormal columns
};
TridiagonalEigs tridiagonal_smallest(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                     int k);

/// Fourier coefficients c_n, n = -max_mode..max_mode, of samples on a
/// periodic grid: c_n = (1/sqrt(2*pi)) * integral of f(s) exp(-i n s) ds.
std::vector<std::complex<double>> fourier_coefficients(const GridFunction& f, int max_mode);

/// Same for a complex-valued function given as (re, im) samples.
std::vector<std::complex<double>> fourier_coefficients(const GridFunction& re,
                                                       const GridFunction& im, int max_mode);

}  // namespace ovallab

#endif
