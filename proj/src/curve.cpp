#include "ovallab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace ovallab {

CurveSpec::CurveSpec(std::vector<Harmonic> harmonics) : harmonics_(std::move(harmonics)) {
  for (const auto& h : harmonics_)
    if (h.n < 1) fail(errc::invalid_input, "harmonic index must be >= 1");
  std::sort(harmonics_.begin(), harmonics_.end(),
            [](const Harmonic& x, const Harmonic& y) { return x.n < y.n; });
  for (std::size_t i = 1; i < harmonics_.size(); ++i)
    if (harmonics_[i].n == harmonics_[i - 1].n)
      fail(errc::invalid_input, "duplicate harmonic index " + std::to_string(harmonics_[i].n));
  // drop exact zero entries so the circle has a canonical encoding
  std::erase_if(harmonics_, [](const Harmonic& h) { return h.a == 0.0 && h.b == 0.0; });
}

int CurveSpec::max_harmonic() const {
  int m = 0;
  for (const auto& h : harmonics_) m = std::max(m, h.n);
  return m;
}

double CurveSpec::psi(double s) const {
  double acc = 0.0;
  for (const auto& h : harmonics_) acc += h.a * std::cos(h.n * s) + h.b * std::sin(h.n * s);
  return acc;
}

double CurveSpec::psi_prime(double s) const {
  double acc = 0.0;
  for (const auto& h : harmonics_)
    acc += h.n * (-h.a * std::sin(h.n * s) + h.b * std::cos(h.n * s));
  return acc;
}

double CurveSpec::coefficient_norm() const {
  double acc = 0.0;
  for (const auto& h : harmonics_) acc += h.a * h.a + h.b * h.b;
  return std::sqrt(acc);
}

CurveSpec CurveSpec::scaled(double factor) const {
  std::vector<Harmonic> hs = harmonics_;
  for (auto& h : hs) {
    h.a *= factor;
    h.b *= factor;
  }
  return CurveSpec(std::move(hs));
}

CurveSpec CurveSpec::with_coefficient(int n, double a, double b) const {
  std::vector<Harmonic> hs = harmonics_;
  auto it = std::find_if(hs.begin(), hs.end(), [n](const Harmonic& h) { return h.n == n; });
  if (it != hs.end()) {
    it->a = a;
    it->b = b;
  } else {
    hs.push_back({n, a, b});
  }
  return CurveSpec(std::move(hs));
}

CurveSpec CurveSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_input, "cannot open curve file " + path);
  std::vector<Harmonic> hs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    Harmonic h;
    if (ls >> h.n >> h.a >> h.b) hs.push_back(h);
    else {
      std::string leftover;
      if (ls.clear(), ls >> leftover)
        fail(errc::invalid_input, "bad curve file line: " + line);
    }
  }
  return CurveSpec(std::move(hs));
}

std::string CurveSpec::to_file_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& h : harmonics_) os << h.n << " " << h.a << " " << h.b << "\n";
  return os.str();
}

GridFunction turning_angle(const CurveSpec& c, const UniformGrid& g) {
  return sample(g, [&](double s) { return c.turning_angle_at(s); });
}

GridFunction curvature_unchecked(const CurveSpec& c, const UniformGrid& g) {
  return sample(g, [&](double s) { return c.curvature_at(s); });
}

GridFunction curvature(const CurveSpec& c, const UniformGrid& g) {
  GridFunction k = curvature_unchecked(c, g);
  int arg = 0;
  const double kmin = k.values.minCoeff(&arg);
  if (kmin <= 0.0)
    fail_at(errc::positivity_violation,
            "curvature non-positive (min " + std::to_string(kmin) + ")", g.node(arg));
  return k;
}

ClosureResidual closure_residual(const CurveSpec& c, const UniformGrid& g) {
  GridFunction cosphi = sample(g, [&](double s) { return std::cos(c.turning_angle_at(s)); });
  GridFunction sinphi = sample(g, [&](double s) { return std::sin(c.turning_angle_at(s)); });
  return {trapezoid_periodic(cosphi), trapezoid_periodic(sinphi)};
}

double ClosureResidual::norm() const { return std::hypot(cos_residual, sin_residual); }

UniformGrid reference_grid(const CurveSpec& c) {
  const int points = std::max(256, 8 * c.max_harmonic());
  return periodic_grid(0.0, 2.0 * M_PI, points);
}

bool admissible(const CurveSpec& c, double closure_tol, double* min_kappa,
                ClosureResidual* residual) {
  const UniformGrid g = reference_grid(c);
  GridFunction k = curvature_unchecked(c, g);
  const double kmin = k.values.minCoeff();
  const ClosureResidual r = closure_residual(c, g);
  if (min_kappa) *min_kappa = kmin;
  if (residual) *residual = r;
  return kmin > 0.0 && std::abs(r.cos_residual) <= closure_tol &&
         std::abs(r.sin_residual) <= closure_tol;
}

CurveSpec project_closure(const CurveSpec& c) {
  const UniformGrid g = reference_grid(c);
  auto residual_of = [&](const CurveSpec& spec) { return closure_residual(spec, g); };

  CurveSpec cur = c;
  ClosureResidual r = residual_of(cur);
  // basin guard on the per-unit-length residual
  if (r.norm() >= 0.5 * 2.0 * M_PI)
    fail(errc::projection_failure, "start residual outside the Newton basin");

  double a1 = 0.0, b1 = 0.0;
  for (const auto& h : cur.harmonics())
    if (h.n == 1) {
      a1 = h.a;
      b1 = h.b;
    }

  const double tol = 1e-10;
  bool converged = r.norm() <= tol;
  for (int iter = 0; iter < 50 && !converged; ++iter) {
    // Jacobian of (int cos phi, int sin phi) w.r.t. (a_1, b_1)
    double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
    const double h = g.spacing();
    for (int i = 0; i < g.points; ++i) {
      const double s = g.node(i);
      const double phi = cur.turning_angle_at(s);
      j11 += -std::sin(phi) * std::cos(s);
      j12 += -std::sin(phi) * std::sin(s);
      j21 += std::cos(phi) * std::cos(s);
      j22 += std::cos(phi) * std::sin(s);
    }
    j11 *= h; j12 *= h; j21 *= h; j22 *= h;
    const double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-14) fail(errc::projection_failure, "singular closure Jacobian");
    const double da = -(j22 * r.cos_residual - j12 * r.sin_residual) / det;
    const double db = -(-j21 * r.cos_residual + j11 * r.sin_residual) / det;

    double step = 1.0;
    for (int back = 0; back < 12; ++back) {
      CurveSpec trial = cur.with_coefficient(1, a1 + step * da, b1 + step * db);
      ClosureResidual rt = residual_of(trial);
      if (rt.norm() < r.norm() || rt.norm() <= tol) {
        cur = trial;
        a1 += step * da;
        b1 += step * db;
        r = rt;
        break;
      }
      step *= 0.5;
      if (back == 11) fail(errc::projection_failure, "damped Newton stalled");
    }
    converged = r.norm() <= tol;
  }
  if (!converged) fail(errc::projection_failure, "closure projection did not converge");

  GridFunction k = curvature_unchecked(cur, g);
  int arg = 0;
  if (k.values.minCoeff(&arg) <= 0.0)
    fail_at(errc::positivity_violation, "projection left the convex family", g.node(arg));
  return cur;
}

std::vector<std::array<double, 2>> reconstruct_xy(const CurveSpec& c, const UniformGrid& g) {
  GridFunction tx = sample(g, [&](double s) { return std::cos(c.turning_angle_at(s)); });
  GridFunction ty = sample(g, [&](double s) { return std::sin(c.turning_angle_at(s)); });
  const double h = g.spacing();
  std::vector<std::array<double, 2>> pts(g.points);
  pts[0] = {0.0, 0.0};
  for (int j = 1; j < g.points; ++j) {
    pts[j][0] = pts[j - 1][0] + 0.5 * h * (tx.values[j] + tx.values[j - 1]);
    pts[j][1] = pts[j - 1][1] + 0.5 * h * (ty.values[j] + ty.values[j - 1]);
  }
  return pts;
}

CurveSpec random_oval(std::uint64_t seed, int max_harmonic, double amplitude) {
  if (!(amplitude < 1.0) || amplitude < 0.0)
    fail(errc::invalid_input, "amplitude must lie in [0, 1)");
  if (max_harmonic < 2) fail(errc::invalid_input, "max_harmonic must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Harmonic> hs;
    for (int n = 2; n <= max_harmonic; n += 2) {
      const double bound = amplitude / (n * n);
      hs.push_back({n, bound * unit(rng), bound * unit(rng)});
    }
    CurveSpec cand(std::move(hs));
    const UniformGrid g = reference_grid(cand);
    if (curvature_unchecked(cand, g).values.minCoeff() > 0.05) return cand;
  }
  fail(errc::sampling_failure, "1000 consecutive rejections; amplitude too large");
}

}  // namespace ovallab
