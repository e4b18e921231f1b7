#include "ovallab/report.hpp"

#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>

#include "ovallab/version.hpp"

namespace ovallab {

json to_json(const UniformGrid& g) {
  return {{"start", g.start}, {"end", g.end}, {"points", g.points}, {"periodic", g.periodic}};
}

json to_json(const GridFunction& f) {
  json j = to_json(f.grid);
  j["values"] = std::vector<double>(f.values.data(), f.values.data() + f.values.size());
  return j;
}

json to_json(const CurveSpec& c) {
  json harmonics = json::array();
  for (const auto& h : c.harmonics()) harmonics.push_back({{"n", h.n}, {"a", h.a}, {"b", h.b}});
  return {{"harmonics", harmonics}};
}

json to_json(const ClosureResidual& r) {
  return {{"cos_residual", r.cos_residual}, {"sin_residual", r.sin_residual}};
}

json to_json(const HalfBoundCertificate& c) {
  return {{"c0_sq", c.c0_sq},
          {"parseval_residual", c.parseval_residual},
          {"quadratic_form", c.quadratic_form},
          {"fourier_sum", c.fourier_sum},
          {"certified_lower_bound", c.certified_lower_bound},
          {"sign_warning", c.sign_warning}};
}

json to_json(const BridgeReport& r) {
  return {{"s_of_x", to_json(r.s_of_x)},
          {"R", to_json(r.R)},
          {"phi", to_json(r.phi)},
          {"kappa", to_json(r.kappa)},
          {"lhs_34", r.lhs_34},
          {"rhs_34", r.rhs_34},
          {"lhs_311", r.lhs_311},
          {"rhs_311", r.rhs_311},
          {"closure", to_json(r.closure)},
          {"ratio_34", r.ratio_34},
          {"ratio_311", r.ratio_311},
          {"R_boundary", {r.R_boundary[0], r.R_boundary[1]}},
          {"winding", r.winding}};
}

json to_json(const SingleBridgeReport& r) {
  return {{"s_of_x", to_json(r.s_of_x)},
          {"w", to_json(r.w)},
          {"dirichlet_lhs", r.dirichlet_lhs},
          {"dirichlet_rhs", r.dirichlet_rhs},
          {"kinetic_x", r.kinetic_x},
          {"sextic_x", r.sextic_x}};
}

json to_json(const XYReport& r) {
  return {{"ratio_316", r.ratio_316},
          {"constraint_residuals", {r.constraint_residuals[0], r.constraint_residuals[1]}}};
}

json to_json(const LTReport& r) {
  return {{"gamma", r.gamma},
          {"eigenvalues", r.eigenvalues},
          {"moment_sum", r.moment_sum},
          {"potential_integral", r.potential_integral},
          {"ratio", r.ratio},
          {"reference_constant", r.reference_constant},
          {"margin", r.margin},
          {"states", r.states}};
}

json to_json(const OptimizationTrace& t) {
  json history = json::array();
  for (const auto& [eval, value] : t.history) history.push_back({eval, value});
  json j = {{"best_curve", to_json(t.best_curve)},
            {"best_value", t.best_value},
            {"history", history},
            {"termination", termination_name(t.termination)},
            {"total_evals", t.total_evals},
            {"conjecture_violations", t.conjecture_violations.size()}};
  if (t.certificate) j["certificate"] = to_json(*t.certificate);
  if (t.warned_unbounded_sense) j["warning"] = "maximization with g >= 0 is unbounded";
  return j;
}

json to_json(const Spectrum& s) {
  return {{"eigenvalues",
           std::vector<double>(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size())},
          {"resolution", s.resolution},
          {"method", method_name(s.method)},
          {"negative_count", s.negative_count},
          {"refinement_flagged", s.refinement_flagged},
          {"refinement_delta", s.refinement_delta}};
}

std::string csv_metadata_header(const Metadata& meta) {
  std::ostringstream os;
  os << "# " << kToolName << " " << kVersion << "\n";
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << "\n";
  return os.str();
}

json json_metadata(const Metadata& meta) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  for (const auto& [key, value] : meta) j[key] = value;
  return j;
}

std::string bridge_curve_csv(const BridgeReport& r, const Metadata& meta) {
  std::ostringstream os;
  os << csv_metadata_header(meta);
  os << "s,R,phi,kappa\n";
  os.precision(17);
  for (int j = 0; j < r.R.grid.points; ++j)
    os << r.R.grid.node(j) << "," << r.R.values[j] << "," << r.phi.values[j] << ","
       << r.kappa.values[j] << "\n";
  return os.str();
}

std::string write_counterexample_dump(const CurveSpec& curve, double g, int resolution,
                                      const std::string& directory) {
  static std::mutex dump_mutex;
  std::lock_guard<std::mutex> lock(dump_mutex);

  json dump;
  dump["tool"] = kToolName;
  dump["version"] = kVersion;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const long long stamp = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  dump["timestamp_ms"] = stamp;
  dump["coupling"] = g;
  dump["curve"] = to_json(curve);

  for (const auto method :
       {DiscretizationMethod::fourier_galerkin, DiscretizationMethod::finite_difference}) {
    CurveOperatorSpec spec;
    spec.curve = curve;
    spec.coupling = g;
    spec.resolution = 2 * resolution;
    spec.method = method;
    dump[std::string("spectrum_") + method_name(method)] = to_json(lowest_eigs(spec, 4));
  }
  if (g == 1.0) {
    CurveOperatorSpec spec;
    spec.curve = curve;
    spec.resolution = 2 * resolution;
    dump["certificate"] = to_json(halfbound_certificate(spec));
  }

  const std::string path =
      (directory.empty() ? std::string(".") : directory) + "/counterexample_" +
      std::to_string(stamp) + ".json";
  std::ofstream out(path);
  out << dump.dump(2) << "\n";
  return path;
}

}  // namespace ovallab
