#ifndef OVALLAB_CURVE_HPP
#define OVALLAB_CURVE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ovallab/grid.hpp"

namespace ovallab {

struct Harmonic {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
};

/// Closed convex plane curve of length 2*pi, encoded by the harmonic content
/// of its turning angle phi(s) = s + sum_n (a_n cos ns + b_n sin ns).
/// An empty harmonic list is the circle.
class CurveSpec {
 public:
  CurveSpec() = default;
  explicit CurveSpec(std::vector<Harmonic> harmonics);

  const std::vector<Harmonic>& harmonics() const { return harmonics_; }
  bool is_circle() const { return harmonics_.empty(); }
  int max_harmonic() const;

  double psi(double s) const;
  double psi_prime(double s) const;
  double turning_angle_at(double s) const { return s + psi(s); }
  double curvature_at(double s) const { return 1.0 + psi_prime(s); }

  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const;

  CurveSpec scaled(double factor) const;
  CurveSpec with_coefficient(int n, double a, double b) const;  // replaces or inserts mode n

  /// Plain-text format: one `n a_n b_n` line per harmonic, `#` comments,
  /// empty file = circle.
  static CurveSpec from_file(const std::string& path);
  std::string to_file_text() const;

 private:
  std::vector<Harmonic> harmonics_;
};

GridFunction turning_angle(const CurveSpec& c, const UniformGrid& g);

/// Analytic curvature samples kappa = 1 + psi'; throws positivity_violation
/// (reporting the minimizing s) when the sampled minimum is <= 0.
GridFunction curvature(const CurveSpec& c, const UniformGrid& g);

/// Unchecked curvature samples, for barrier evaluation near the boundary.
GridFunction curvature_unchecked(const CurveSpec& c, const UniformGrid& g);

struct ClosureResidual {
  double cos_residual = 0.0;
  double sin_residual = 0.0;
  double norm() const;
};

/// (int cos phi ds, int sin phi ds) by periodic trapezoid; both vanish for a
/// closed curve.
ClosureResidual closure_residual(const CurveSpec& c, const UniformGrid& g);

/// Restores closure by damped Newton on the (a_1, b_1) pair; all other
/// harmonics untouched. Requires the start residual norm < 0.5.
CurveSpec project_closure(const CurveSpec& c);

/// Cumulative trapezoid integration of the unit tangent from (0, 0). The gap
/// between the advanced last point and the first equals the closure residual
/// magnitude up to quadrature error.
std::vector<std::array<double, 2>> reconstruct_xy(const CurveSpec& c, const UniformGrid& g);

/// Seeded even-harmonic oval sampler: coefficients for n = 2, 4, ...,
/// uniform in [-amplitude/n^2, amplitude/n^2], redrawn until min kappa > 0.05.
/// Closure is automatic in this family.
CurveSpec random_oval(std::uint64_t seed, int max_harmonic, double amplitude);

/// Default validation grid for a spec (fine enough for its highest mode).
UniformGrid reference_grid(const CurveSpec& c);

/// min kappa > 0 and closure residual within tolerance on the reference grid.
bool admissible(const CurveSpec& c, double closure_tol = 1e-10, double* min_kappa = nullptr,
                ClosureResidual* residual = nullptr);

}  // namespace ovallab

#endif
