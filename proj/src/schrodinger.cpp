#include "ovallab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ovallab/constants.hpp"

namespace ovallab {

PotentialSpec PotentialSpec::poschl_teller(double a) {
  if (!(a >= 0)) fail(errc::invalid_input, "poschl_teller needs a >= 0");
  PotentialSpec v;
  v.family_ = PotentialFamily::poschl_teller;
  v.p1_ = a;
  return v;
}

PotentialSpec PotentialSpec::gaussian(double depth, double width) {
  if (!(depth >= 0) || !(width > 0)) fail(errc::invalid_input, "gaussian needs depth >= 0, width > 0");
  PotentialSpec v;
  v.family_ = PotentialFamily::gaussian;
  v.p1_ = depth;
  v.p2_ = width;
  return v;
}

PotentialSpec PotentialSpec::square_well(double depth, double half_width) {
  if (!(depth >= 0) || !(half_width > 0))
    fail(errc::invalid_input, "square_well needs depth >= 0, half_width > 0");
  PotentialSpec v;
  v.family_ = PotentialFamily::square_well;
  v.p1_ = depth;
  v.p2_ = half_width;
  return v;
}

PotentialSpec PotentialSpec::tabulated(GridFunction samples) {
  if (samples.values.minCoeff() < 0) fail(errc::invalid_input, "tabulated potential must be >= 0");
  PotentialSpec v;
  v.family_ = PotentialFamily::tabulated;
  v.table_ = std::move(samples);
  return v;
}

double PotentialSpec::operator()(double x) const {
  switch (family_) {
    case PotentialFamily::poschl_teller: {
      const double c = std::cosh(x);
      return p1_ / (c * c);
    }
    case PotentialFamily::gaussian: {
      const double t = x / p2_;
      return p1_ * std::exp(-t * t);
    }
    case PotentialFamily::square_well:
      return std::abs(x) <= p2_ ? p1_ : 0.0;
    case PotentialFamily::tabulated: {
      const auto& g = table_.grid;
      if (x <= g.start || x >= g.end) return 0.0;
      const double t = (x - g.start) / g.spacing();
      const int j = std::min(static_cast<int>(t), g.points - 2);
      const double w = t - j;
      return (1.0 - w) * table_.values[j] + w * table_.values[j + 1];
    }
  }
  return 0.0;
}

double PotentialSpec::max_value() const {
  if (family_ == PotentialFamily::tabulated) return table_.values.maxCoeff();
  return p1_;
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  switch (family_) {
    case PotentialFamily::poschl_teller: os << "poschl_teller:a=" << p1_; break;
    case PotentialFamily::gaussian: os << "gaussian:depth=" << p1_ << ",width=" << p2_; break;
    case PotentialFamily::square_well:
      os << "square_well:depth=" << p1_ << ",half_width=" << p2_;
      break;
    case PotentialFamily::tabulated: os << "tabulated:points=" << table_.grid.points; break;
  }
  return os.str();
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(errc::invalid_input, "expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double want_number(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) fail(errc::invalid_input, "missing potential parameter '" + key + "'");
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    fail(errc::invalid_input, "bad number for '" + key + "': " + it->second);
  }
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(errc::invalid_input, "unknown potential parameter '" + key + "'");
  }
}

GridFunction load_two_column_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_input, "cannot open potential file " + path);
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, v;
    if (ls >> x >> v) {
      xs.push_back(x);
      vs.push_back(v);
    }
  }
  if (xs.size() < 8) fail(errc::invalid_input, "tabulated potential needs at least 8 samples");
  const double h = xs[1] - xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs((xs[i] - xs[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      fail(errc::invalid_input, "tabulated potential needs a uniform x grid");
  UniformGrid g = closed_grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
  return GridFunction(g, Eigen::Map<Eigen::VectorXd>(vs.data(), vs.size()));
}

}  // namespace

PotentialSpec parse_potential(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (family == "poschl_teller") {
    auto kv = parse_kv(rest);
    reject_unknown(kv, {"a"});
    return PotentialSpec::poschl_teller(want_number(kv, "a"));
  }
  if (family == "gaussian") {
    auto kv = parse_kv(rest);
    reject_unknown(kv, {"depth", "width"});
    return PotentialSpec::gaussian(want_number(kv, "depth"), want_number(kv, "width"));
  }
  if (family == "square_well") {
    auto kv = parse_kv(rest);
    reject_unknown(kv, {"depth", "half_width"});
    return PotentialSpec::square_well(want_number(kv, "depth"), want_number(kv, "half_width"));
  }
  if (family == "tabulated") {
    auto kv = parse_kv(rest);
    reject_unknown(kv, {"path"});
    auto it = kv.find("path");
    if (it == kv.end()) fail(errc::invalid_input, "tabulated potential needs path=");
    return PotentialSpec::tabulated(load_two_column_csv(it->second));
  }
  fail(errc::invalid_input, "unknown potential family '" + family + "'");
}

Spectrum bound_states(const PotentialSpec& v, int k, BoundStateOptions opt) {
  if (opt.points < 501 || opt.points % 2 == 0)
    fail(errc::contract_violation, "points must be odd and >= 501");
  if (!(opt.half_width > 0)) fail(errc::contract_violation, "half_width must be positive");
  const double vmax = v.max_value();
  if (vmax > 0 && v(opt.half_width) >= 1e-10 * vmax)
    fail(errc::domain_error, "domain too small: potential not negligible at the walls");
  if (vmax > 0 && v(-opt.half_width) >= 1e-10 * vmax)
    fail(errc::domain_error, "domain too small: potential not negligible at the walls");

  const UniformGrid grid = closed_grid(-opt.half_width, opt.half_width, opt.points);
  const double h = grid.spacing();
  const int interior = opt.points - 2;
  if (k < 1 || k > interior) fail(errc::contract_violation, "eigenpair count out of range");

  Eigen::VectorXd diag(interior), off = Eigen::VectorXd::Constant(interior - 1, -1.0 / (h * h));
  for (int j = 0; j < interior; ++j) diag[j] = 2.0 / (h * h) - v(grid.node(j + 1));

  auto eig = tridiagonal_smallest(diag, off, k);

  Spectrum out;
  out.eigenvalues = eig.values;
  out.resolution = opt.points;
  out.method = DiscretizationMethod::finite_difference;
  out.negative_count = static_cast<int>((eig.values.array() < 0.0).count());
  out.eigenfunctions.reserve(k);
  const double scale = 1.0 / std::sqrt(h);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(opt.points);
    full.segment(1, interior) = eig.vectors.col(j) * scale;
    GridFunction f(grid, std::move(full));
    const double nrm = std::sqrt(inner(f, f));
    f.values /= nrm;
    if (j == 0 && trapezoid(f) < 0) f.values = -f.values;
    out.eigenfunctions.push_back(std::move(f));
  }
  return out;
}

double rayleigh_identity_check(const GridFunction& u, const PotentialSpec& v, double lambda) {
  GridFunction du = derivative(u);
  GridFunction vu2 = sample(u.grid, [&](double x) { return v(x); });
  vu2.values = vu2.values.cwiseProduct(u.values.array().square().matrix());
  return std::abs(lambda - (trapezoid(vu2) - inner(du, du)));
}

double potential_integral(const PotentialSpec& v, double power, double half_width) {
  auto f = [&](double x) { return std::pow(v(x), power); };
  int n = 2049;
  const double a = -half_width, b = half_width;
  auto value_at = [&](int count) {
    double h = (b - a) / (count - 1);
    double acc = 0.5 * (f(a) + f(b));
    for (int j = 1; j < count - 1; ++j) acc += f(a + j * h);
    return acc * h;
  };
  double prev = value_at(n);
  for (int round = 0; round < 8; ++round) {
    n = 2 * (n - 1) + 1;
    const double cur = value_at(n);
    if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

LTReport lt_ratio(const PotentialSpec& v, double gamma, int states, BoundStateOptions opt) {
  if (!(gamma > 0.5)) fail(errc::domain_error, "needs gamma > 1/2");
  if (states != 1 && states != 2) fail(errc::invalid_input, "states must be 1 or 2");
  auto spec = bound_states(v, states, opt);
  if (spec.negative_count < states)
    fail(errc::insufficient_bound_states,
         "potential binds " + std::to_string(spec.negative_count) + " state(s), need " +
             std::to_string(states));

  LTReport rep;
  rep.gamma = gamma;
  rep.states = states;
  for (int j = 0; j < states; ++j) {
    const double lam = -spec.eigenvalues[j];
    rep.eigenvalues.push_back(lam);
    rep.moment_sum += std::pow(lam, gamma);
  }
  rep.potential_integral = potential_integral(v, gamma + 0.5, opt.half_width);
  rep.ratio = rep.moment_sum / rep.potential_integral;
  rep.reference_constant = keller_constant(gamma);
  rep.margin = rep.reference_constant - rep.ratio;
  return rep;
}

std::pair<GridFunction, GridFunction> eigenfunction_pair(const PotentialSpec& v,
                                                         BoundStateOptions opt) {
  auto spec = bound_states(v, 2, opt);
  if (spec.negative_count < 2)
    fail(errc::insufficient_bound_states, "potential binds fewer than two states");
  return {spec.eigenfunctions[0], spec.eigenfunctions[1]};
}

}  // namespace ovallab
