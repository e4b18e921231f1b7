#include "ovallab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace ovallab {

double trapezoid_periodic(const GridFunction& f) {
  if (!f.grid.periodic) fail(errc::contract_violation, "trapezoid_periodic needs a periodic grid");
  return f.grid.spacing() * f.values.sum();
}

double trapezoid(const GridFunction& f) {
  if (f.grid.periodic) return trapezoid_periodic(f);
  const auto& v = f.values;
  const int n = f.size();
  double acc = 0.5 * (v[0] + v[n - 1]);
  for (int j = 1; j < n - 1; ++j) acc += v[j];
  return f.grid.spacing() * acc;
}

Eigen::VectorXd cumulative_trapezoid(const GridFunction& f) {
  const auto& v = f.values;
  const int n = f.size();
  const double h = f.grid.spacing();
  Eigen::VectorXd out(n);
  out[0] = 0.0;
  for (int j = 1; j < n; ++j) out[j] = out[j - 1] + 0.5 * h * (v[j] + v[j - 1]);
  return out;
}

double inner(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) fail(errc::contract_violation, "inner product needs a common grid");
  GridFunction prod(f.grid, f.values.cwiseProduct(g.values));
  return trapezoid(prod);
}

GridFunction derivative(const GridFunction& f) {
  const auto& v = f.values;
  const int n = f.size();
  const double h = f.grid.spacing();
  Eigen::VectorXd d(n);
  for (int j = 1; j < n - 1; ++j) d[j] = (v[j + 1] - v[j - 1]) / (2 * h);
  if (f.grid.periodic) {
    d[0] = (v[1] - v[n - 1]) / (2 * h);
    d[n - 1] = (v[0] - v[n - 2]) / (2 * h);
  } else {
    d[0] = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h);
    d[n - 1] = (3 * v[n - 1] - 4 * v[n - 2] + v[n - 3]) / (2 * h);
  }
  return GridFunction(f.grid, std::move(d));
}

GridFunction derivative4(const GridFunction& f) {
  if (f.grid.periodic) fail(errc::contract_violation, "derivative4 expects a non-periodic grid");
  const auto& v = f.values;
  const int n = f.size();
  const double h = f.grid.spacing();
  Eigen::VectorXd d(n);
  auto forward = [&](int j) {
    return (-25 * v[j] + 48 * v[j + 1] - 36 * v[j + 2] + 16 * v[j + 3] - 3 * v[j + 4]) / (12 * h);
  };
  auto backward = [&](int j) {
    return (25 * v[j] - 48 * v[j - 1] + 36 * v[j - 2] - 16 * v[j - 3] + 3 * v[j - 4]) / (12 * h);
  };
  d[0] = forward(0);
  d[1] = (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]) / (12 * h);
  for (int j = 2; j < n - 2; ++j)
    d[j] = (v[j - 2] - 8 * v[j - 1] + 8 * v[j + 1] - v[j + 2]) / (12 * h);
  d[n - 2] = (3 * v[n - 1] + 10 * v[n - 2] - 18 * v[n - 3] + 6 * v[n - 4] - v[n - 5]) / (12 * h);
  d[n - 1] = backward(n - 1);
  return GridFunction(f.grid, std::move(d));
}

MonotoneCubic::MonotoneCubic(Eigen::VectorXd xs, Eigen::VectorXd ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != n) fail(errc::contract_violation, "interpolant needs >= 2 matching points");
  for (int i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      fail(errc::contract_violation, "interpolation abscissae must be strictly increasing");

  Eigen::VectorXd delta(n - 1), hseg(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    hseg[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / hseg[i];
  }
  slope_.resize(n);
  slope_[0] = delta[0];
  slope_[n - 1] = delta[n - 2];
  for (int i = 1; i < n - 1; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      slope_[i] = 0.0;
    } else {
      // weighted harmonic mean (Fritsch-Carlson), guarantees monotonicity
      const double w1 = 2 * hseg[i] + hseg[i - 1];
      const double w2 = hseg[i] + 2 * hseg[i - 1];
      slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  const int n = static_cast<int>(x_.size());
  if (x <= x_[0]) return y_[0] + slope_[0] * (x - x_[0]);
  if (x >= x_[n - 1]) return y_[n - 1] + slope_[n - 1] * (x - x_[n - 1]);
  // binary search for the segment containing x
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  const double h = x_[lo + 1] - x_[lo];
  const double t = (x - x_[lo]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * y_[lo] + h10 * h * slope_[lo] + h01 * y_[lo + 1] + h11 * h * slope_[lo + 1];
}

Eigen::VectorXd MonotoneCubic::operator()(const Eigen::VectorXd& xs) const {
  Eigen::VectorXd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

}  // namespace ovallab
