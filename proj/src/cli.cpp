#include "ovallab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ovallab/constants.hpp"
#include "ovallab/parallel.hpp"
#include "ovallab/report.hpp"
#include "ovallab/version.hpp"

namespace ovallab {

std::vector<double> GridSpec::values() const {
  if (!(step > 0)) fail(errc::invalid_input, "grid step must be positive");
  if (end < start) fail(errc::invalid_input, "grid end before start");
  const double ratio = (end - start) / step;
  const double nearest = std::round(ratio);
  int count;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, std::abs(ratio)))
    count = static_cast<int>(nearest) + 1;
  else
    count = static_cast<int>(std::floor(ratio)) + 1;
  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) out[j] = start + j * step;
  return out;
}

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec g;
  std::stringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
    fail(errc::invalid_input, "grid must be start:end:step, got '" + text + "'");
  try {
    g.start = std::stod(a);
    g.end = std::stod(b);
    g.step = std::stod(c);
  } catch (const std::exception&) {
    fail(errc::invalid_input, "bad grid number in '" + text + "'");
  }
  return g;
}

CurveSpec parse_curve(const std::string& text) {
  if (text == "circle") return CurveSpec();
  if (text.rfind("file:", 0) == 0) return CurveSpec::from_file(text.substr(5));
  if (text.rfind("harm:", 0) == 0) {
    std::vector<Harmonic> hs;
    std::stringstream groups(text.substr(5));
    std::string group;
    while (std::getline(groups, group, ';')) {
      Harmonic h;
      bool have_n = false, have_a = false, have_b = false;
      std::stringstream items(group);
      std::string item;
      while (std::getline(items, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
          fail(errc::invalid_input, "expected key=value in curve spec, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        double val;
        try {
          val = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
          fail(errc::invalid_input, "bad number in curve spec: '" + item + "'");
        }
        if (key == "n") { h.n = static_cast<int>(val); have_n = true; }
        else if (key == "a") { h.a = val; have_a = true; }
        else if (key == "b") { h.b = val; have_b = true; }
        else fail(errc::invalid_input, "unknown curve key '" + key + "'");
      }
      if (!have_n || !have_a || !have_b)
        fail(errc::invalid_input, "each harmonic needs n=, a=, b=");
      hs.push_back(h);
    }
    return CurveSpec(std::move(hs));
  }
  fail(errc::invalid_input, "curve must be 'circle', 'harm:...' or 'file:path'");
}

std::pair<GridFunction, GridFunction> random_decaying_pair(std::uint64_t seed) {
  const UniformGrid grid = closed_grid(-12.0, 12.0, 2001);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int modes = 7;

  auto draw = [&]() {
    Eigen::VectorXd coeff(modes);
    for (int m = 0; m < modes; ++m) coeff[m] = unit(rng);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(grid.points);
    for (int j = 0; j < grid.points; ++j) {
      const double x = grid.node(j);
      double h0 = 1.0, h1 = 2.0 * x;
      const double env = std::exp(-0.5 * x * x);
      double acc = coeff[0] * h0 + (modes > 1 ? coeff[1] * h1 : 0.0);
      for (int m = 2; m < modes; ++m) {
        const double h2 = 2.0 * x * h1 - 2.0 * (m - 1) * h0;
        // scale down the factorial growth so every mode contributes
        acc += coeff[m] * h2 / std::pow(2.0, m);
        h0 = h1;
        h1 = h2;
      }
      v[j] = acc * env;
    }
    return v;
  };

  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::VectorXd v1 = draw(), v2 = draw();
    GridFunction f1(grid, v1);
    const double n1 = std::sqrt(inner(f1, f1));
    if (n1 < 1e-8) continue;
    f1.values /= n1;
    GridFunction f2(grid, v2);
    f2.values -= inner(f1, f2) * f1.values;
    const double n2 = std::sqrt(inner(f2, f2));
    if (n2 < 1e-8) continue;
    f2.values /= n2;
    return {f1, f2};
  }
  fail(errc::sampling_failure, "could not draw an independent pair");
}

namespace {

struct CommonOptions {
  std::string output;
  std::string format;  // csv or json; per-subcommand default
  std::uint64_t seed = 0;
  int parallelism = 1;
  std::string dump_dir = ".";
  std::string config_path;
};

std::uint64_t env_seed() {
  const char* env = std::getenv("OVAL_LAB_SEED");
  if (!env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    return 0;
  }
}

void add_common(CLI::App* cmd, CommonOptions& opt, const std::string& default_format) {
  opt.seed = env_seed();
  opt.format = default_format;
  cmd->add_option("--output", opt.output, "write the report to this path (default stdout)");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", opt.seed, "RNG seed (default from OVAL_LAB_SEED)");
  cmd->add_option("--parallelism", opt.parallelism, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dump-dir", opt.dump_dir, "directory for counterexample dumps");
  cmd->add_option("--config", opt.config_path,
                  "key = value defaults file for this subcommand; flags override");
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Reads `key = value` lines from a --config file and appends them as flags
// for the named subcommand. Explicitly passed flags win; unknown keys are
// rejected by name.
std::vector<std::string> expand_config_args(CLI::App& app, int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string subname;
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      subname = a;
      break;
    }
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || subname.empty()) return args;

  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(subname);
  } catch (const CLI::Error&) {
    return args;  // let the main parse report the bad subcommand
  }

  std::ifstream in(path);
  if (!in) fail(errc::invalid_input, "cannot open config file " + path);

  auto already_given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };

  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trimmed(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::invalid_input, "config line is not key = value: '" + trimmed(line) + "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty()) fail(errc::invalid_input, "config line missing key");
    const std::string flag = "--" + key;
    if (!sub->get_option_no_throw(flag))
      fail(errc::invalid_input, "unknown config key '" + key + "' for subcommand " + subname);
    if (flag == "--config" || already_given(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) fail(errc::invalid_input, "cannot write to " + opt.output);
  out << text;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int sweep_ovals(const CommonOptions& opt, int count, double g, int resolution, int max_harmonic,
                double amplitude) {
  struct Row {
    std::uint64_t seed;
    double lambda1, lambda2, min_kappa, c0_sq, certified;
    bool violation;
  };
  std::vector<Row> rows(count);
  parallel_for_indexed(count, opt.parallelism, [&](int i) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(i);
    const CurveSpec oval = random_oval(seed, max_harmonic, amplitude);
    CurveOperatorSpec spec;
    spec.curve = oval;
    spec.coupling = g;
    spec.resolution = resolution;
    const Spectrum sp = lowest_eigs(spec, 2);
    Row row{seed, sp.eigenvalues[0], sp.eigenvalues[1], 0.0, 0.0, 0.0, false};
    double kmin = 0.0;
    admissible(oval, 1e-10, &kmin);
    row.min_kappa = kmin;
    if (g == 1.0) {
      const auto cert = halfbound_certificate(spec);
      row.c0_sq = cert.c0_sq;
      row.certified = cert.certified_lower_bound;
      if (row.lambda1 < 0.5 - 1e-8)
        fail(errc::numerical_failure, "eigenvalue under the proven 1/2 bound: numerical bug");
      row.violation = row.lambda1 < 1.0 - 1e-6;
    }
    rows[i] = row;
  });

  double lo = rows[0].lambda1, hi = rows[0].lambda1, mean = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.lambda1);
    hi = std::max(hi, r.lambda1);
    mean += r.lambda1;
  }
  mean /= count;

  Metadata meta{{"subcommand", "sweep"},
                {"kind", "ovals"},
                {"count", std::to_string(count)},
                {"g", format_double(g)},
                {"resolution", std::to_string(resolution)},
                {"max_harmonic", std::to_string(max_harmonic)},
                {"amplitude", format_double(amplitude)},
                {"seed", std::to_string(opt.seed)},
                {"min_lambda1", format_double(lo)},
                {"max_lambda1", format_double(hi)},
                {"mean_lambda1", format_double(mean)}};

  std::ostringstream os;
  os << csv_metadata_header(meta);
  os << "index,seed,lambda1,lambda2,min_kappa,c0_sq,certified_lower_bound\n";
  for (int i = 0; i < count; ++i) {
    const auto& r = rows[i];
    os << i << "," << r.seed << "," << format_double(r.lambda1) << ","
       << format_double(r.lambda2) << "," << format_double(r.min_kappa) << ","
       << format_double(r.c0_sq) << "," << format_double(r.certified) << "\n";
  }
  emit(opt, os.str());

  int status = 0;
  for (int i = 0; i < count; ++i) {
    if (rows[i].violation) {
      const CurveSpec oval = random_oval(rows[i].seed, max_harmonic, amplitude);
      const std::string path = write_counterexample_dump(oval, g, resolution, opt.dump_dir);
      std::cerr << "conjecture-violation candidate: seed " << rows[i].seed << ", lambda1 "
                << rows[i].lambda1 << ", dump " << path << "\n";
      status = 3;
    }
  }
  return status;
}

int sweep_pairs(const CommonOptions& opt, int count) {
  std::vector<double> ratios(count);
  parallel_for_indexed(count, opt.parallelism, [&](int i) {
    const auto [u1, u2] = random_decaying_pair(opt.seed + static_cast<std::uint64_t>(i));
    ratios[i] = functional_ratio_pair(u1, u2);
  });
  double lo = ratios[0], hi = ratios[0], mean = 0.0;
  for (double r : ratios) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    mean += r;
  }
  mean /= count;

  Metadata meta{{"subcommand", "sweep"},   {"kind", "pairs"},
                {"count", std::to_string(count)}, {"seed", std::to_string(opt.seed)},
                {"min_ratio", format_double(lo)}, {"max_ratio", format_double(hi)},
                {"mean_ratio", format_double(mean)}};
  std::ostringstream os;
  os << csv_metadata_header(meta);
  os << "index,seed,ratio\n";
  for (int i = 0; i < count; ++i)
    os << i << "," << (opt.seed + i) << "," << format_double(ratios[i]) << "\n";
  emit(opt, os.str());

  int status = 0;
  for (int i = 0; i < count; ++i) {
    if (ratios[i] < 1.0 - 1e-6) {
      json dump{{"kind", "pair_ratio_violation"},
                {"seed", opt.seed + static_cast<std::uint64_t>(i)},
                {"ratio", ratios[i]}};
      const std::string path = opt.dump_dir + "/counterexample_pair_" +
                               std::to_string(opt.seed + i) + ".json";
      std::ofstream out(path);
      out << dump.dump(2) << "\n";
      std::cerr << "ratio-violation candidate: seed " << (opt.seed + i) << ", dump " << path
                << "\n";
      status = 3;
    }
  }
  return status;
}

int sweep_eps(const CommonOptions& opt, const std::string& direction_text,
              const std::string& eps_text, double g, int resolution) {
  const CurveSpec direction = parse_curve(direction_text);
  const std::vector<double> eps = parse_grid_spec(eps_text).values();
  bool truncated = false;
  const auto rows = perturbation_scan(g, direction, eps, resolution, &truncated);

  Metadata meta{{"subcommand", "sweep"},
                {"kind", "eps"},
                {"direction", direction_text},
                {"eps_grid", eps_text},
                {"g", format_double(g)},
                {"resolution", std::to_string(resolution)},
                {"seed", std::to_string(opt.seed)},
                {"truncated", truncated ? "true" : "false"}};
  std::ostringstream os;
  os << csv_metadata_header(meta);
  os << "eps,lambda1,lambda2\n";
  for (const auto& r : rows)
    os << format_double(r.eps) << "," << format_double(r.lambda1) << ","
       << format_double(r.lambda2) << "\n";
  emit(opt, os.str());
  return 0;
}

int sweep_gamma(const CommonOptions& opt, const std::string& gamma_text) {
  const std::vector<double> gammas = parse_grid_spec(gamma_text).values();
  std::vector<ConstantsRow> rows(gammas.size());
  parallel_for_indexed(static_cast<int>(gammas.size()), opt.parallelism,
                       [&](int i) { rows[i] = constants_row(gammas[i]); });

  Metadata meta{{"subcommand", "sweep"},
                {"kind", "gamma"},
                {"gamma_grid", gamma_text},
                {"seed", std::to_string(opt.seed)}};
  std::ostringstream os;
  os << csv_metadata_header(meta);
  os << "gamma,L1,Lc,c,c_tilde,identity_residual,ratio_R\n";
  for (const auto& r : rows)
    os << format_double(r.gamma) << "," << format_double(r.L1) << "," << format_double(r.Lc)
       << "," << format_double(r.c_gamma) << "," << format_double(r.c_tilde) << ","
       << format_double(r.identity_residual) << "," << format_double(r.ratio_R) << "\n";
  emit(opt, os.str());
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{std::string(kToolName) +
               " - eigenvalue laboratory for ovals and 1-D Schrodinger wells"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // constants
  auto* constants_cmd = app.add_subcommand("constants", "closed-form constant table over a gamma grid");
  static CommonOptions constants_opt;
  static std::string gamma_grid = "0.6:1.5:0.1";
  add_common(constants_cmd, constants_opt, "csv");
  constants_cmd->add_option("--gamma-grid", gamma_grid, "start:end:step, gamma in (0.5, 1.5]");

  // curve-eig
  auto* eig_cmd = app.add_subcommand("curve-eig", "lowest eigenvalues of the curve operator");
  static CommonOptions eig_opt;
  static std::string eig_curve = "circle";
  static double eig_g = 1.0;
  static int eig_k = 3, eig_resolution = 64;
  static std::string eig_method = "fourier_galerkin";
  static bool eig_allow_nonconvex = false;
  add_common(eig_cmd, eig_opt, "json");
  eig_cmd->add_option("--curve", eig_curve, "circle | harm:... | file:path");
  eig_cmd->add_option("--g", eig_g, "coupling in -d2/ds2 + g kappa^2");
  eig_cmd->add_option("--k", eig_k, "eigenvalue count")->check(CLI::PositiveNumber);
  eig_cmd->add_option("--resolution", eig_resolution, "modes per side (or FD points)");
  eig_cmd->add_option("--method", eig_method, "fourier_galerkin or finite_difference")
      ->check(CLI::IsMember({"fourier_galerkin", "finite_difference"}));
  eig_cmd->add_flag("--allow-nonconvex", eig_allow_nonconvex,
                    "skip the kappa > 0 validation (results labelled)");

  // bridge
  auto* bridge_cmd =
      app.add_subcommand("bridge", "change of variables from eigenfunctions to curve data");
  static CommonOptions bridge_opt;
  static std::string bridge_potential = "poschl_teller:a=6";
  static bool bridge_single = false;
  static double bridge_L = 18.0;
  static int bridge_points = 32001, bridge_s_points = 4097;
  static std::string bridge_csv;
  add_common(bridge_cmd, bridge_opt, "json");
  bridge_cmd->add_option("--potential", bridge_potential, "potential mini-language");
  bridge_cmd->add_flag("--single", bridge_single, "single-function bridge on the ground state");
  bridge_cmd->add_option("--half-width", bridge_L, "Dirichlet wall position");
  bridge_cmd->add_option("--points", bridge_points, "x-grid points (odd)");
  bridge_cmd->add_option("--s-points", bridge_s_points, "uniform s-grid nodes");
  bridge_cmd->add_option("--csv", bridge_csv, "also write s,R,phi,kappa rows to this path");

  // lt-ratio
  auto* lt_cmd = app.add_subcommand("lt-ratio", "bound-state moment to potential-integral ratio");
  static CommonOptions lt_opt;
  static std::string lt_potential = "poschl_teller:a=2";
  static double lt_gamma = 1.0;
  static int lt_states = 1;
  static double lt_L = 20.0;
  static int lt_points = 4001;
  add_common(lt_cmd, lt_opt, "json");
  lt_cmd->add_option("--potential", lt_potential, "potential mini-language");
  lt_cmd->add_option("--gamma", lt_gamma, "moment exponent in (0.5, 1.5]");
  lt_cmd->add_option("--states", lt_states, "1 or 2");
  lt_cmd->add_option("--half-width", lt_L, "Dirichlet wall position");
  lt_cmd->add_option("--points", lt_points, "x-grid points (odd)");

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "search curve space for eigenvalue extremizers");
  static CommonOptions opt_opt;
  static double opt_g = 1.0;
  static std::string opt_sense = "minimize", opt_family = "even";
  static int opt_max_harmonic = 6, opt_restarts = 10, opt_max_evals = 5000, opt_resolution = 32;
  static double opt_barrier = 1e-3, opt_amplitude = 0.5;
  static std::string opt_history_csv;
  add_common(opt_cmd, opt_opt, "json");
  opt_cmd->add_option("--g", opt_g, "coupling");
  opt_cmd->add_option("--sense", opt_sense, "minimize or maximize")
      ->check(CLI::IsMember({"minimize", "maximize"}));
  opt_cmd->add_option("--family", opt_family, "even (closure-exact) or general (projected)")
      ->check(CLI::IsMember({"even", "general"}));
  opt_cmd->add_option("--max-harmonic", opt_max_harmonic, "highest turning-angle mode");
  opt_cmd->add_option("--restarts", opt_restarts, "independent seeded restarts");
  opt_cmd->add_option("--max-evals", opt_max_evals, "objective evaluations per restart");
  opt_cmd->add_option("--resolution", opt_resolution, "Galerkin modes per side");
  opt_cmd->add_option("--barrier-strength", opt_barrier, "curvature wall weight");
  opt_cmd->add_option("--amplitude", opt_amplitude, "restart sampling amplitude");
  opt_cmd->add_option("--history-csv", opt_history_csv, "write eval,value history to this path");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "eigenvalues along a perturbation ray");
  static CommonOptions scan_opt;
  static std::string scan_direction = "harm:n=2,a=0,b=0.1";
  static std::string scan_eps = "0:0.4:0.05";
  static double scan_g = 1.0;
  static int scan_resolution = 48;
  add_common(scan_cmd, scan_opt, "csv");
  scan_cmd->add_option("--direction", scan_direction, "curve delta (harm:... syntax)");
  scan_cmd->add_option("--eps-grid", scan_eps, "start:end:step");
  scan_cmd->add_option("--g", scan_g, "coupling");
  scan_cmd->add_option("--resolution", scan_resolution, "Galerkin modes per side");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "axis sweeps with deterministic aggregation");
  static CommonOptions sweep_opt;
  static std::string sweep_kind = "ovals";
  static int sweep_count = 500;
  static double sweep_g = 1.0;
  static int sweep_resolution = 48, sweep_max_harmonic = 6;
  static double sweep_amplitude = 0.5;
  static std::string sweep_direction = "harm:n=2,a=0,b=0.1";
  static std::string sweep_eps_grid = "0:0.8:0.05";
  static std::string sweep_gamma_grid = "0.6:1.5:0.1";
  add_common(sweep_cmd, sweep_opt, "csv");
  sweep_cmd->add_option("--kind", sweep_kind, "ovals | pairs | eps | gamma")
      ->check(CLI::IsMember({"ovals", "pairs", "eps", "gamma"}));
  sweep_cmd->add_option("--count", sweep_count, "points on the seed axis");
  sweep_cmd->add_option("--g", sweep_g, "coupling");
  sweep_cmd->add_option("--resolution", sweep_resolution, "Galerkin modes per side");
  sweep_cmd->add_option("--max-harmonic", sweep_max_harmonic, "oval sampler mode cap");
  sweep_cmd->add_option("--amplitude", sweep_amplitude, "oval sampler amplitude");
  sweep_cmd->add_option("--direction", sweep_direction, "eps sweeps: curve delta");
  sweep_cmd->add_option("--eps-grid", sweep_eps_grid, "eps sweeps: start:end:step");
  sweep_cmd->add_option("--gamma-grid", sweep_gamma_grid, "gamma sweeps: start:end:step");

  std::vector<std::string> args;
  try {
    args = expand_config_args(app, argc, argv);
  } catch (const Error& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 1;
  }
  std::vector<const char*> cargs;
  cargs.push_back(argc > 0 ? argv[0] : kToolName);
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(constants_cmd)) {
      const auto gammas = parse_grid_spec(gamma_grid).values();
      for (double g : gammas)
        if (!(g > 0.5) || g > 1.5 + 1e-12)
          fail(errc::invalid_input, "gamma grid must stay inside (0.5, 1.5]");
      Metadata meta{{"subcommand", "constants"},
                    {"gamma_grid", gamma_grid},
                    {"seed", std::to_string(constants_opt.seed)}};
      if (constants_opt.format == "json") {
        json rows = json::array();
        for (double g : gammas) {
          const auto r = constants_row(g);
          rows.push_back({{"gamma", r.gamma},
                          {"L1", r.L1},
                          {"Lc", r.Lc},
                          {"c", r.c_gamma},
                          {"c_tilde", r.c_tilde},
                          {"identity_residual", r.identity_residual},
                          {"ratio_R", r.ratio_R}});
        }
        json out{{"metadata", json_metadata(meta)}, {"rows", rows}};
        emit(constants_opt, out.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << csv_metadata_header(meta);
        os << "gamma,L1,Lc,c,c_tilde,identity_residual,ratio_R\n";
        for (double g : gammas) {
          const auto r = constants_row(g);
          os << format_double(r.gamma) << "," << format_double(r.L1) << ","
             << format_double(r.Lc) << "," << format_double(r.c_gamma) << ","
             << format_double(r.c_tilde) << "," << format_double(r.identity_residual) << ","
             << format_double(r.ratio_R) << "\n";
        }
        emit(constants_opt, os.str());
      }
      return 0;
    }

    if (app.got_subcommand(eig_cmd)) {
      CurveOperatorSpec spec;
      spec.curve = parse_curve(eig_curve);
      spec.coupling = eig_g;
      spec.resolution = eig_resolution;
      spec.method = eig_method == "fourier_galerkin" ? DiscretizationMethod::fourier_galerkin
                                                     : DiscretizationMethod::finite_difference;
      spec.require_convex = !eig_allow_nonconvex;
      const Spectrum sp = lowest_eigs(spec, eig_k);

      Metadata meta{{"subcommand", "curve-eig"},
                    {"curve", eig_curve},
                    {"g", format_double(eig_g)},
                    {"k", std::to_string(eig_k)},
                    {"resolution", std::to_string(eig_resolution)},
                    {"method", eig_method},
                    {"convexity_enforced", eig_allow_nonconvex ? "false" : "true"},
                    {"seed", std::to_string(eig_opt.seed)}};
      if (eig_opt.format == "csv") {
        std::ostringstream os;
        os << csv_metadata_header(meta) << "index,eigenvalue\n";
        for (int i = 0; i < sp.eigenvalues.size(); ++i)
          os << i << "," << format_double(sp.eigenvalues[i]) << "\n";
        emit(eig_opt, os.str());
      } else {
        json out{{"metadata", json_metadata(meta)}, {"spectrum", to_json(sp)}};
        emit(eig_opt, out.dump(2) + "\n");
      }
      if (eig_g == 1.0 && !eig_allow_nonconvex && sp.eigenvalues[0] < 1.0 - 1e-6) {
        const std::string path =
            write_counterexample_dump(spec.curve, eig_g, eig_resolution, eig_opt.dump_dir);
        std::cerr << "conjecture-violation candidate; dump " << path << "\n";
        return 3;
      }
      return 0;
    }

    if (app.got_subcommand(bridge_cmd)) {
      const PotentialSpec v = parse_potential(bridge_potential);
      BoundStateOptions bopt{bridge_L, bridge_points};
      Metadata meta{{"subcommand", "bridge"},
                    {"potential", bridge_potential},
                    {"half_width", format_double(bridge_L)},
                    {"points", std::to_string(bridge_points)},
                    {"s_points", std::to_string(bridge_s_points)},
                    {"single", bridge_single ? "true" : "false"},
                    {"seed", std::to_string(bridge_opt.seed)}};
      if (bridge_single) {
        const Spectrum sp = bound_states(v, 1, bopt);
        if (sp.negative_count < 1)
          fail(errc::insufficient_bound_states, "potential binds no state");
        const auto rep = single_bridge(sp.eigenfunctions[0], bridge_s_points);
        json out{{"metadata", json_metadata(meta)}, {"report", to_json(rep)}};
        emit(bridge_opt, out.dump(2) + "\n");
      } else {
        const auto [u1, u2] = eigenfunction_pair(v, bopt);
        const auto rep = pair_bridge(u1, u2, bridge_s_points);
        const auto xy = xy_interpretation(rep.R, rep.phi);
        json out{{"metadata", json_metadata(meta)},
                 {"report", to_json(rep)},
                 {"xy", to_json(xy)}};
        emit(bridge_opt, out.dump(2) + "\n");
        if (!bridge_csv.empty()) {
          std::ofstream csv(bridge_csv);
          if (!csv) fail(errc::invalid_input, "cannot write to " + bridge_csv);
          csv << bridge_curve_csv(rep, meta);
        }
      }
      return 0;
    }

    if (app.got_subcommand(lt_cmd)) {
      if (!(lt_gamma > 0.5) || lt_gamma > 1.5 + 1e-12)
        fail(errc::invalid_input, "gamma must lie in (0.5, 1.5]");
      const PotentialSpec v = parse_potential(lt_potential);
      const auto rep = lt_ratio(v, lt_gamma, lt_states, {lt_L, lt_points});
      Metadata meta{{"subcommand", "lt-ratio"},
                    {"potential", lt_potential},
                    {"gamma", format_double(lt_gamma)},
                    {"states", std::to_string(lt_states)},
                    {"half_width", format_double(lt_L)},
                    {"points", std::to_string(lt_points)},
                    {"seed", std::to_string(lt_opt.seed)}};
      json out{{"metadata", json_metadata(meta)}, {"report", to_json(rep)}};
      emit(lt_opt, out.dump(2) + "\n");
      return 0;
    }

    if (app.got_subcommand(opt_cmd)) {
      OptimizationProblem p;
      p.coupling = opt_g;
      p.sense = opt_sense == "minimize" ? OptimizationSense::minimize
                                        : OptimizationSense::maximize;
      p.family = opt_family == "even" ? CurveFamily::even_harmonic : CurveFamily::general;
      p.max_harmonic = opt_max_harmonic;
      p.resolution = opt_resolution;
      p.barrier_strength = opt_barrier;
      p.seed = opt_opt.seed;
      p.restarts = opt_restarts;
      p.max_evals = opt_max_evals;
      p.init_amplitude = opt_amplitude;
      p.parallelism = opt_opt.parallelism;

      if (p.sense == OptimizationSense::maximize && p.coupling >= 0.0)
        std::cerr << "warning: maximizing with g >= 0 is unbounded; running anyway\n";

      const OptimizationTrace trace = p.sense == OptimizationSense::minimize
                                          ? minimize_lambda1(p)
                                          : maximize_lambda1(p);
      Metadata meta{{"subcommand", "optimize"},
                    {"g", format_double(opt_g)},
                    {"sense", opt_sense},
                    {"family", opt_family},
                    {"max_harmonic", std::to_string(opt_max_harmonic)},
                    {"restarts", std::to_string(opt_restarts)},
                    {"max_evals", std::to_string(opt_max_evals)},
                    {"resolution", std::to_string(opt_resolution)},
                    {"barrier_strength", format_double(opt_barrier)},
                    {"amplitude", format_double(opt_amplitude)},
                    {"seed", std::to_string(opt_opt.seed)},
                    {"parallelism", std::to_string(opt_opt.parallelism)}};
      json out{{"metadata", json_metadata(meta)}, {"trace", to_json(trace)}};
      emit(opt_opt, out.dump(2) + "\n");

      if (!opt_history_csv.empty()) {
        std::ofstream csv(opt_history_csv);
        if (!csv) fail(errc::invalid_input, "cannot write to " + opt_history_csv);
        csv << csv_metadata_header(meta) << "eval,value\n";
        for (const auto& [eval, value] : trace.history)
          csv << eval << "," << format_double(value) << "\n";
      }

      if (!trace.conjecture_violations.empty()) {
        for (const auto& c : trace.conjecture_violations) {
          const std::string path =
              write_counterexample_dump(c, opt_g, opt_resolution, opt_opt.dump_dir);
          std::cerr << "conjecture-violation candidate; dump " << path << "\n";
        }
        return 3;
      }
      return 0;
    }

    if (app.got_subcommand(scan_cmd)) {
      CommonOptions& copt = scan_opt;
      return sweep_eps(copt, scan_direction, scan_eps, scan_g, scan_resolution);
    }

    if (app.got_subcommand(sweep_cmd)) {
      if (sweep_kind == "ovals")
        return sweep_ovals(sweep_opt, sweep_count, sweep_g, sweep_resolution, sweep_max_harmonic,
                           sweep_amplitude);
      if (sweep_kind == "pairs") return sweep_pairs(sweep_opt, sweep_count);
      if (sweep_kind == "eps")
        return sweep_eps(sweep_opt, sweep_direction, sweep_eps_grid, sweep_g, sweep_resolution);
      return sweep_gamma(sweep_opt, sweep_gamma_grid);
    }
  } catch (const Error& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    switch (e.code()) {
      case errc::invalid_input:
      case errc::domain_error:
      case errc::contract_violation:
      case errc::unsupported_coupling:
      case errc::positivity_violation:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ovallab
