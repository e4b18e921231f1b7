#ifndef OVALLAB_GRID_HPP
#define OVALLAB_GRID_HPP

#include <Eigen/Dense>
#include <functional>

#include "ovallab/errors.hpp"

namespace ovallab {

/// Uniform 1-D grid. Periodic grids sample [start, end) and exclude the right
/// endpoint; non-periodic grids include both endpoints.
struct UniformGrid {
  double start = 0.0;
  double end = 1.0;
  int points = 8;
  bool periodic = false;

  double spacing() const {
    return periodic ? (end - start) / points : (end - start) / (points - 1);
  }
  double node(int j) const { return start + j * spacing(); }

  Eigen::VectorXd nodes() const {
    Eigen::VectorXd x(points);
    const double h = spacing();
    for (int j = 0; j < points; ++j) x[j] = start + j * h;
    return x;
  }

  bool operator==(const UniformGrid&) const = default;
};

inline UniformGrid periodic_grid(double start, double end, int points) {
  if (points < 8) fail(errc::contract_violation, "grid needs at least 8 points");
  if (!(end > start)) fail(errc::contract_violation, "grid span must be positive");
  return UniformGrid{start, end, points, true};
}

inline UniformGrid closed_grid(double start, double end, int points) {
  if (points < 8) fail(errc::contract_violation, "grid needs at least 8 points");
  if (!(end > start)) fail(errc::contract_violation, "grid span must be positive");
  return UniformGrid{start, end, points, false};
}

/// Samples of a real function, one value per grid node.
struct GridFunction {
  UniformGrid grid;
  Eigen::VectorXd values;

  GridFunction() = default;
  GridFunction(UniformGrid g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.points)
      fail(errc::contract_violation, "value count does not match grid node count");
  }

  int size() const { return static_cast<int>(values.size()); }
};

template <class F>
GridFunction sample(const UniformGrid& g, F&& f) {
  Eigen::VectorXd v(g.points);
  const double h = g.spacing();
  for (int j = 0; j < g.points; ++j) v[j] = f(g.start + j * h);
  return GridFunction(g, std::move(v));
}

/// Periodic trapezoid rule h * sum(values). Exact for trigonometric
/// polynomials of degree < points/2.
double trapezoid_periodic(const GridFunction& f);

/// Trapezoid rule; dispatches on grid periodicity.
double trapezoid(const GridFunction& f);

/// Running integral from the left endpoint, node-aligned, starting at 0.
Eigen::VectorXd cumulative_trapezoid(const GridFunction& f);

/// Quadrature inner product of two samples on the same grid.
double inner(const GridFunction& f, const GridFunction& g);

/// Second-order first derivative: centered in the interior, wrap-around for
/// periodic grids, one-sided 3-point formulas at the ends otherwise.
GridFunction derivative(const GridFunction& f);

/// Fourth-order first derivative on a non-periodic grid (5-point stencils).
GridFunction derivative4(const GridFunction& f);

/// Shape-preserving piecewise cubic interpolant (Fritsch--Carlson slopes).
/// Abscissae must be strictly increasing; duplicate abscissae in raw data
/// should be filtered by the caller.
class MonotoneCubic {
 public:
  MonotoneCubic(Eigen::VectorXd xs, Eigen::VectorXd ys);
  double operator()(double x) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& xs) const;

 private:
  Eigen::VectorXd x_, y_, slope_;
};

}  // namespace ovallab

#endif
