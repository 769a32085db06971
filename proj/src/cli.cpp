#include "fgsg/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fgsg/errors.hpp"
#include "fgsg/io.hpp"
#include "fgsg/parallel.hpp"

namespace fgsg {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string curve_path;
  std::string out_path;
  std::string signs;
  std::vector<double> x0;
  std::string x_range = "0:10:0.1";
  std::string t_range = "0:0:1";
  double window = 200.0;
  double t = 0.0;
  std::vector<double> ks{1, 4, 16, 64, 256};
  bool empirical = false;
  bool matrix = false;
  bool reference = false;
  bool inject_fault = false;
  std::string dump_contours;

  double quad_abs = QuadratureTolerance{}.abs;
  double quad_rel = QuadratureTolerance{}.rel;
  int quad_intervals = QuadratureTolerance{}.max_intervals;
  double theta_tol = SolutionOptions{}.theta_tolerance;
  double divisor_threshold = SolutionOptions{}.divisor_threshold;
  double invariant_tol = PeriodOptions{}.invariant_tolerance;
};

struct Loaded {
  SpectralCurve curve;
  std::string hash;
};

Loaded load(const RunConfig& cfg) {
  const std::string text = read_file(cfg.curve_path);
  return {parse_curve_json(text), sha256_hex(text)};
}

QuadratureTolerance quad(const RunConfig& cfg) { return {cfg.quad_abs, cfg.quad_rel, cfg.quad_intervals}; }

json tolerances(const RunConfig& cfg) {
  return {{"quadrature_abs", cfg.quad_abs},       {"quadrature_rel", cfg.quad_rel},
          {"quadrature_max_intervals", cfg.quad_intervals}, {"theta", cfg.theta_tol},
          {"divisor_threshold", cfg.divisor_threshold},     {"invariant", cfg.invariant_tol}};
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + cfg.out_path);
  f << text;
}

std::string csv_header(const RunConfig& cfg, const std::string& hash) {
  return "# curve_sha256 " + hash + "\n# tolerances " + tolerances(cfg).dump() + "\n";
}

GridSpec parse_ranges(const std::string& xs, const std::string& ts) {
  auto triple = [](const std::string& s, double& a, double& b, double& h) {
    std::istringstream in(s);
    char c1 = 0, c2 = 0;
    if (!(in >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !in.eof())
      throw Error(ErrorKind::InvalidInput, "range '" + s + "' must be start:stop:step");
    range_count(a, b, h);
  };
  GridSpec g{};
  triple(xs, g.x0, g.x1, g.dx);
  triple(ts, g.t0, g.t1, g.dt);
  return g;
}

struct Pipeline {
  Loaded loaded;
  CycleBasis basis;
  PeriodData periods;
};

Pipeline periods_pipeline(const RunConfig& cfg, bool check_abel) {
  Pipeline p{load(cfg), {}, {}};
  BasisOptions bopts;
  bopts.tolerance = quad(cfg);
  bopts.inject_fault = cfg.inject_fault;
  p.basis = standard_cycle_basis(p.loaded.curve, bopts);
  PeriodOptions popts;
  popts.tolerance = quad(cfg);
  popts.check_abel = check_abel;
  popts.invariant_tolerance = cfg.invariant_tol;
  p.periods = compute_period_data(p.loaded.curve, p.basis, popts);
  return p;
}

SolutionOptions solution_options(const RunConfig& cfg) {
  SolutionOptions o;
  o.theta_tolerance = cfg.theta_tol;
  o.divisor_threshold = cfg.divisor_threshold;
  return o;
}

TorusPoint torus_point(const RunConfig& cfg, const SpectralCurve& c) {
  RVector x0 = RVector::Zero(c.genus());
  if (!cfg.x0.empty()) {
    if (static_cast<int>(cfg.x0.size()) != c.genus())
      throw Error(ErrorKind::InvalidInput, "--x0 needs g = " + std::to_string(c.genus()) + " values");
    x0 = Eigen::Map<const RVector>(cfg.x0.data(), c.genus());
  }
  return make_torus_point(c.genus(), c.real_pairs(), parse_signs(cfg.signs), x0);
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg);
  std::ostringstream os;
  os << "g = " << l.curve.genus() << "\nm = " << l.curve.real_pairs() << "\n";
  for (int i = 1; i <= 2 * l.curve.genus(); ++i) {
    const Complex e = l.curve.E(i);
    os << "E_" << i << " = " << format_double(e.real());
    if (e.imag() != 0.0) os << (e.imag() > 0 ? " + " : " - ") << format_double(std::abs(e.imag())) << "i";
    os << "\n";
  }
  os << "curve_sha256 = " << l.hash << "\n";
  emit(cfg, out, os.str());
  return 0;
}

int cmd_periods(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = periods_pipeline(cfg, true);
  json doc = {{"curve", curve_to_json(p.loaded.curve)},
              {"curve_sha256", p.loaded.hash},
              {"tolerances", tolerances(cfg)},
              {"periods", periods_to_json(p.periods)}};
  if (!cfg.dump_contours.empty()) {
    std::ofstream f(cfg.dump_contours, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + cfg.dump_contours);
    f << contours_to_json(p.basis).dump(2) << "\n";
  }
  emit(cfg, out, doc.dump(2) + "\n");
  return 0;
}

int cmd_grid(const RunConfig& cfg, std::ostream& out) {
  const GridSpec grid = parse_ranges(cfg.x_range, cfg.t_range);
  const Pipeline p = periods_pipeline(cfg, false);
  const SolutionContext ctx(p.loaded.curve, p.periods, solution_options(cfg));
  const Solution sol(ctx, torus_point(cfg, p.loaded.curve));
  std::ostringstream os;
  os << csv_header(cfg, p.loaded.hash);
  os << "# c1_sign " << sol.selection().sign << "\n";
  write_grid_csv(os, evaluate_grid(sol, grid));
  emit(cfg, out, os.str());
  return 0;
}

json charge_doc(const RunConfig& cfg, bool empirical) {
  if (!(cfg.window > 0.0)) throw Error(ErrorKind::InvalidInput, "--window must be positive");
  const Pipeline p = periods_pipeline(cfg, false);
  const SolutionContext ctx(p.loaded.curve, p.periods, solution_options(cfg));
  const TorusPoint tp = torus_point(cfg, p.loaded.curve);
  ChargeOptions co;
  co.empirical = empirical;
  co.window = cfg.window;
  co.t = cfg.t;
  const ChargeReport r = charge_report(ctx, tp, co);
  json doc = charge_to_json(r);
  doc["x0"] = vector_to_json(tp.x0);
  doc["curve_sha256"] = p.loaded.hash;
  doc["tolerances"] = tolerances(cfg);
  if (r.has_empirical) {
    doc["t"] = cfg.t;
    doc["difference"] = std::abs(r.density_formula - r.density_empirical);
    doc["bound"] = 2.0 / cfg.window + 1e-3;
  }
  return doc;
}

int cmd_charge(const RunConfig& cfg, std::ostream& out) {
  emit(cfg, out, charge_doc(cfg, cfg.empirical).dump(2) + "\n");
  return 0;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  json full = charge_doc(cfg, cfg.empirical);
  json doc = {{"s", full["s"]}, {"n", full["n"]}, {"density_formula", full["density_formula"]},
              {"density_empirical", full["density_empirical"]}, {"window", full["window"]},
              {"x0", full["x0"]}, {"curve_sha256", full["curve_sha256"]}, {"tolerances", full["tolerances"]}};
  if (full.contains("difference")) {
    doc["t"] = full["t"];
    doc["difference"] = full["difference"];
    doc["bound"] = full["bound"];
  }
  emit(cfg, out, doc.dump(2) + "\n");
  return 0;
}

int cmd_multiscale(const RunConfig& cfg, std::ostream& out) {
  const Loaded l = load(cfg);
  SweepOptions so;
  so.tolerance = quad(cfg);
  so.enforce_monotone = false;
  const MultiscaleSweep sweep = convergence_sweep(l.curve, cfg.ks, so);
  std::ostringstream os;
  os << csv_header(cfg, l.hash);
  write_multiscale_csv(os, sweep, cfg.matrix);
  emit(cfg, out, os.str());
  require_monotone(sweep, so.noise_floor);
  return 0;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvalidInput, "SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Finite-gap sine-Gordon solutions from hyperelliptic spectral data"};
  app.name("fgsg");
  app.require_subcommand(1);
  app.add_flag("--reference-mode", cfg.reference, "Single-threaded, bit-stable runs");
  app.add_option("--quad-abs", cfg.quad_abs, "Quadrature absolute tolerance")->capture_default_str();
  app.add_option("--quad-rel", cfg.quad_rel, "Quadrature relative tolerance")->capture_default_str();
  app.add_option("--quad-max-intervals", cfg.quad_intervals, "Quadrature interval budget")->capture_default_str();
  app.add_option("--theta-tol", cfg.theta_tol, "Theta truncation tolerance")->capture_default_str();
  app.add_option("--divisor-threshold", cfg.divisor_threshold, "Relative |theta| threshold")->capture_default_str();
  app.add_option("--invariant-tol", cfg.invariant_tol, "Abel-map identity tolerance")->capture_default_str();
  app.add_option("-o,--out", cfg.out_path, "Output file (default stdout)");

  auto curve_arg = [&](CLI::App* sub) {
    sub->add_option("curve", cfg.curve_path, "Curve JSON {\"E\": [[re, im], ...]}")->required();
    sub->add_flag("--inject-fault", cfg.inject_fault, "Break the cycle basis (negative test)");
  };
  auto torus_args = [&](CLI::App* sub) {
    sub->add_option("--s", cfg.signs, "Topological type, e.g. \"+-\"");
    sub->add_option("--x0", cfg.x0, "Torus coordinate x0 (g values in [0,1))")->delimiter(',');
  };

  auto* validate = app.add_subcommand("validate", "Validate a curve file");
  validate->add_option("curve", cfg.curve_path, "Curve JSON")->required();
  auto* periods = app.add_subcommand("periods", "Riemann matrix, U, V, A(0), K and self-checks");
  curve_arg(periods);
  periods->add_option("--dump-contours", cfg.dump_contours, "Write cycle polylines as JSON");
  auto* grid = app.add_subcommand("grid", "Evaluate e^{iu} and unwrapped u on a grid");
  curve_arg(grid);
  torus_args(grid);
  grid->add_option("--x", cfg.x_range, "x range start:stop:step")->capture_default_str();
  grid->add_option("--t", cfg.t_range, "t range start:stop:step")->capture_default_str();
  auto* charge = app.add_subcommand("charge", "Basic charges and charge density");
  curve_arg(charge);
  torus_args(charge);
  charge->add_flag("--empirical", cfg.empirical, "Also compute the windowed empirical density");
  charge->add_option("--window", cfg.window, "Window T")->capture_default_str();
  charge->add_option("--time", cfg.t, "Time of the empirical window")->capture_default_str();
  auto* density = app.add_subcommand("density", "Charge density by formula and by windowed slope");
  curve_arg(density);
  torus_args(density);
  density->add_flag("--empirical", cfg.empirical, "Compute the windowed empirical density");
  density->add_option("--window", cfg.window, "Window T")->capture_default_str();
  density->add_option("--time", cfg.t, "Time of the empirical window")->capture_default_str();
  auto* multiscale = app.add_subcommand("multiscale", "Sweep B(k) toward the block-diagonal limit");
  curve_arg(multiscale);
  multiscale->add_option("--k", cfg.ks, "k values, ascending, starting at 1")->delimiter(',')->capture_default_str();
  multiscale->add_flag("--matrix", cfg.matrix, "Dump |B(k) - B_inf| entries");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  const bool previous = reference_mode();
  set_reference_mode(cfg.reference || previous);
  int code = 0;
  try {
    if (validate->parsed()) code = cmd_validate(cfg, out);
    else if (periods->parsed()) code = cmd_periods(cfg, out);
    else if (grid->parsed()) code = cmd_grid(cfg, out);
    else if (charge->parsed()) code = cmd_charge(cfg, out);
    else if (density->parsed()) code = cmd_density(cfg, out);
    else if (multiscale->parsed()) code = cmd_multiscale(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = is_input_error(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = 2;
  }
  set_reference_mode(previous);
  return code;
}

}  // namespace fgsg
