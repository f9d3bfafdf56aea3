#include "equichord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "equichord/billiard.hpp"
#include "equichord/body_spec.hpp"
#include "equichord/csv.hpp"
#include "equichord/equichordal.hpp"
#include "equichord/error.hpp"
#include "equichord/floating.hpp"
#include "equichord/numeric.hpp"
#include "equichord/revolution.hpp"

namespace equichord::cli {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

[[noreturn]] void usage(const std::string& flag, const std::string& what) {
  throw Error(ErrorCode::UsageError, flag + ": " + what);
}

void require_positive(const std::string& flag, double v) {
  if (!(v > 0.0)) usage(flag, "must be positive");
}

void require_count(const std::string& flag, double v, double min) {
  if (!(v >= min) || v != std::floor(v)) {
    usage(flag, "must be an integer >= " + std::to_string(static_cast<long>(min)));
  }
}

std::vector<std::string> axis_names(const std::string& prefix, int dim) {
  static const char* kAxes[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (int k = 0; k < dim; ++k) out.push_back(prefix + "_" + kAxes[k]);
  return out;
}

RevolutionProfile require_revolution(const Body& body, const std::string& flag) {
  if (const auto* r = std::get_if<RevolutionProfile>(&body)) return *r;
  throw Error(ErrorCode::InvalidBody, flag + " must be a body of revolution");
}

PlanarBody as_planar(const Body& body) {
  if (const auto* p = std::get_if<PlanarBody>(&body)) return *p;
  return meridian_section(std::get<RevolutionProfile>(body));
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

Report run_check(const RunConfig& cfg) {
  const Body outer = load_body(cfg.bodies.at("outer"));
  const Body inner = load_body(cfg.bodies.at("inner"));
  if (outer.index() != inner.index()) {
    throw Error(ErrorCode::InvalidBody, "--outer and --inner must be of the same kind");
  }
  CheckConfig cc;
  cc.power = cfg.option("power");
  cc.num_frames = static_cast<int>(cfg.option("frames"));
  cc.num_section_dirs = static_cast<int>(cfg.option("dirs"));
  cc.tolerance = cfg.option("tol");
  cc.dimension = body_dimension(outer);
  const CheckReport cr =
      std::holds_alternative<RevolutionProfile>(outer)
          ? check_pair_revolution(std::get<RevolutionProfile>(outer), std::get<RevolutionProfile>(inner), cc)
          : check_pair_planar(std::get<PlanarBody>(outer), std::get<PlanarBody>(inner), cc);

  csv::Table table({"frame_index", "alpha", "a_s", "value", "deviation"});
  for (const auto& f : cr.frames) {
    table.add_row({static_cast<double>(f.index), f.alpha, f.tangency_x, f.value, f.deviation});
  }
  Report rep;
  const bool pass = cr.satisfied();
  rep.summary = verdict(pass) + " c=" + fmt("%.6f", cr.constant_estimate) +
                " max_dev=" + sci(cr.max_deviation) +
                " worst_frame=" + std::to_string(cr.worst_frame.plane_id) +
                " max_frame_spread=" + sci(cr.max_frame_spread()) +
                " samples=" + std::to_string(cr.sample_count);
  rep.table = table.str();
  rep.exit_status = pass ? kPass : kPropertyFailure;
  return rep;
}

void warn_large_fraction(std::vector<std::string>& warnings, double fraction) {
  if (fraction > 0.5) {
    warnings.push_back("warning: fraction " + fmt("%g", fraction) +
                           " exceeds 1/2; the floating body may be empty or fail to be a Dupin body");
  }
}

Report run_float(const RunConfig& cfg) {
  const Body body = load_body(cfg.bodies.at("body"));
  const double fraction = cfg.option("fraction");
  const CutSpec cut = CutSpec::fraction(fraction);
  const int dirs = static_cast<int>(cfg.option("dirs"));
  Report rep;
  const FloatingBodyApprox approx = convex_floating_body(body, cut, dirs);
  const DupinReport dupin = dupin_check(body, approx, cut, cfg.option("tol"));
  const int d = body_dimension(body);

  std::vector<std::string> header{"dir_index"};
  for (auto& n : axis_names("xi", d)) header.push_back(n);
  header.push_back("t");
  for (auto& n : axis_names("p", d)) header.push_back(n);
  header.push_back("dupin_mismatch");
  csv::Table table(header);
  for (int k = 0; k < dirs; ++k) {
    std::vector<double> row{static_cast<double>(k)};
    const auto& xi = approx.directions[k].components();
    row.insert(row.end(), xi.data(), xi.data() + d);
    row.push_back(approx.levels[k]);
    const auto& p = approx.inner_points[k];
    row.insert(row.end(), p.data(), p.data() + d);
    row.push_back(dupin.mismatches[k]);
    table.add_row(row);
  }
  const double volume = body_volume(body);
  rep.summary = verdict(dupin.ok()) + " vol=" + fmt("%.9f", volume) +
                " delta=" + fmt("%.9f", fraction * volume) +
                " max_dupin_mismatch=" + sci(dupin.max_mismatch) +
                " flagged=" + std::to_string(dupin.flagged.size()) +
                " dirs=" + std::to_string(dirs);
  rep.table = table.str();
  rep.exit_status = dupin.ok() ? kPass : kPropertyFailure;
  return rep;
}

Report run_equilibrium(const RunConfig& cfg) {
  const Body body = load_body(cfg.bodies.at("body"));
  const double fraction = cfg.option("fraction");
  const int dirs = static_cast<int>(cfg.option("dirs"));
  const double tol = cfg.option("tol");
  Report rep;
  const auto scan = equilibrium_scan(body, CutSpec::fraction(fraction), dirs);
  const int d = body_dimension(body);

  std::vector<std::string> header{"dir_index"};
  for (auto& n : axis_names("xi", d)) header.push_back(n);
  header.push_back("t");
  for (auto& n : axis_names("c", d)) header.push_back(n);
  header.push_back("residual");
  csv::Table table(header);
  double worst = 0.0;
  int worst_k = 0;
  int coincident = 0;
  for (int k = 0; k < dirs; ++k) {
    const auto& r = scan[k];
    std::vector<double> row{static_cast<double>(k)};
    const auto& xi = r.direction.components();
    row.insert(row.end(), xi.data(), xi.data() + d);
    row.push_back(r.level);
    row.insert(row.end(), r.submerged_centroid.data(), r.submerged_centroid.data() + d);
    row.push_back(r.residual);
    table.add_row(row);
    if (r.centroid_coincidence) ++coincident;
    if (r.residual > worst) {
      worst = r.residual;
      worst_k = k;
    }
  }
  const bool pass = worst <= tol;
  rep.summary = verdict(pass) + " max_residual=" + sci(worst) + " at_dir=" + std::to_string(worst_k) +
                " centroid_coincidences=" + std::to_string(coincident) +
                " dirs=" + std::to_string(dirs);
  if (coincident > 0) rep.warnings.push_back("warning: E_CENTROID_COINCIDENCE in some directions");
  rep.table = table.str();
  rep.exit_status = pass ? kPass : kPropertyFailure;
  return rep;
}

Report run_billiard(const RunConfig& cfg) {
  const PlanarBody outer = as_planar(load_body(cfg.bodies.at("outer")));
  const PlanarBody inner = as_planar(load_body(cfg.bodies.at("inner")));
  const int steps = static_cast<int>(cfg.option("steps"));
  const Vec2 beta0 = outer.boundary_point(cfg.option("start-angle"));
  const PowerChainReport pc =
      power_chain_check(outer, inner, beta0, cfg.option("power"), steps, cfg.option("closure-tol"));
  const OrbitRecord& o = pc.orbit;

  csv::Table table({"step", "beta_x", "beta_y", "kappa_x", "kappa_y", "chord_length", "power_sum"});
  for (int j = 0; j < steps; ++j) {
    table.add_row({static_cast<double>(j), o.betas[j].x(), o.betas[j].y(), o.tangencies[j].x(),
                   o.tangencies[j].y(), o.chord_lengths[j], pc.power_sums[j]});
  }
  const bool pass = pc.chord_length_spread <= cfg.option("tol");
  Report rep;
  rep.summary = verdict(pass) + " chord_spread=" + sci(pc.chord_length_spread) +
                " power_sum_spread=" + sci(pc.power_sum_spread) +
                " closed=" + (o.closed ? "yes period=" + std::to_string(*o.period) : std::string("no")) +
                " rotation/pi=" + fmt("%.12f", o.rotation_estimate / std::numbers::pi) +
                " max_gap=" + sci(max_angular_gap(o.betas, outer.basepoint()));
  rep.table = table.str();
  rep.exit_status = pass ? kPass : kPropertyFailure;
  return rep;
}

Report run_analyze(const RunConfig& cfg) {
  const RevolutionProfile f = require_revolution(load_body(cfg.bodies.at("body")), "--body");
  const double sigma = cfg.option("sigma");
  const int dim = static_cast<int>(cfg.option("dim"));
  const int points = static_cast<int>(cfg.option("points"));
  const ChiFunction chi = chi_from_profiles(f, sigma, dim);
  const RevolutionProfile g = g_from_f(f, sigma);
  const double f0 = f.radius(0.0);
  const double tau = std::min(-chi.support.lo, chi.support.hi);
  const double h = 1e-3 * tau;
  const double comp0 = verify_comp0(chi, h, DiffMethod::Richardson);

  const double lo = std::max(chi.support.lo, g.x_min()) + 2.0 * h;
  const double hi = std::min(chi.support.hi, g.x_max()) - 2.0 * h;
  if (!(hi > lo)) throw Error(ErrorCode::SupportTooSmall, "no room for finite differences");
  csv::Table table({"x", "chi", "fd_chi1", "fd_chi2", "comp0_residual"});
  double worst = std::abs(comp0);
  const double s2 = sigma * sigma;
  for (int k = 0; k < points; ++k) {
    const double x = points == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (points - 1);
    const auto d = numeric::richardson_differences(chi.chi, x, h);
    const double A = shift_constant(chi, f0, x, g.derivative(x));
    const double slope = d.first - 2.0 * (x + A);
    const double residual = 2.0 * s2 * d.second + (dim + 1) * slope * slope;
    worst = std::max(worst, std::abs(residual));
    table.add_row({x, chi(x), d.first, d.second, residual});
  }
  const IntervalReport ir = classify_intervals(f, sigma);
  const HeartReport heart = heart_validator(chi, -lo, hi);
  const bool pass = worst <= cfg.option("tol");
  Report rep;
  rep.summary = verdict(pass) + " comp0_at_0=" + sci(comp0) + " max_abs_residual=" + sci(worst) +
                " support=[" + fmt("%.9f", chi.support.lo) + "," + fmt("%.9f", chi.support.hi) + "]" +
                " interval_case=" + to_string(ir.which) + " heart=" + to_string(heart.verdict);
  rep.table = table.str();
  rep.exit_status = pass ? kPass : kPropertyFailure;
  return rep;
}

Report run_reconstruct(const RunConfig& cfg) {
  const RevolutionProfile f = require_revolution(load_body(cfg.bodies.at("body")), "--body");
  const Interval start{cfg.option("start-lo"), cfg.option("start-hi")};
  Report rep;
  try {
    const IntervalChain chain = moving_chord_extend(f, cfg.option("sigma"), start, cfg.option("tol"),
                                                    static_cast<int>(cfg.option("sweep")));
    csv::Table table({"step", "lo", "hi"});
    for (std::size_t j = 0; j < chain.intervals.size(); ++j) {
      table.add_row({static_cast<double>(j), chain.intervals[j].lo, chain.intervals[j].hi});
    }
    double g_gap = 0.0;
    for (std::size_t k = 0; k < chain.g_x.size(); ++k) {
      g_gap = std::max(g_gap, std::abs(chain.g_data[k] - chain.g_closed_form[k]));
    }
    rep.summary = verdict(chain.covered) + " steps=" + std::to_string(chain.intervals.size()) +
                  " terminal=[" + fmt("%.9f", chain.terminal.lo) + "," + fmt("%.9f", chain.terminal.hi) +
                  "] max_arc_dev=" + sci(chain.max_deviation) + " max_g_gap=" + sci(g_gap);
    rep.table = table.str();
    rep.exit_status = chain.covered ? kPass : kPropertyFailure;
  } catch (const ArcMismatchError& e) {
    rep.summary = "FAIL " + std::string(equichord::to_string(e.code())) + " x=" + fmt("%.9f", e.x()) +
                  " deviation=" + sci(e.deviation());
    rep.exit_status = kPropertyFailure;
  }
  return rep;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Check: return "check";
    case Command::Float: return "float";
    case Command::Equilibrium: return "equilibrium";
    case Command::Billiard: return "billiard";
    case Command::Analyze: return "analyze";
    case Command::Reconstruct: return "reconstruct";
  }
  return "?";
}

double RunConfig::option(const std::string& name) const {
  const auto it = options.find(name);
  if (it == options.end()) throw Error(ErrorCode::UsageError, "--" + name + ": not set");
  return it->second;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Numerical experiments on equichordal pairs, floating bodies and tangent-chord billiards",
               "equichord"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "reserved; all computations are deterministic");

  std::string outer, inner, body, out, start;
  // Defaults differ between subcommands, so each gets its own option table.
  std::map<std::string, std::map<std::string, double>> opt;
  const auto num = [&opt](CLI::App* sub, const std::string& name, double fallback, const std::string& help) {
    double& slot = opt[sub->get_name()][name];
    slot = fallback;
    return sub->add_option("--" + name, slot, help)->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "test the i-equichordal property of a pair");
  check->add_option("--outer", outer, "outer body file (JSON)")->required();
  check->add_option("--inner", inner, "inner body file (JSON)")->required();
  num(check, "power", 4.0, "exponent i (0 = product form)");
  num(check, "frames", 256, "number of tangent frames");
  num(check, "dirs", 128, "section directions per frame");
  num(check, "tol", 1e-6, "relative tolerance on the constant");
  check->add_option("--out", out, "CSV output");

  auto* flt = app.add_subcommand("float", "convex floating body and Dupin check");
  flt->add_option("--body", body, "body file (JSON)")->required();
  num(flt, "fraction", 0.0, "cut volume as a fraction of the body volume")->required();
  num(flt, "dirs", 2000, "number of directions");
  num(flt, "tol", 1e-6, "Dupin mismatch tolerance (relative to volume)");
  flt->add_option("--out", out, "CSV output");

  auto* eq = app.add_subcommand("equilibrium", "floating equilibrium residuals");
  eq->add_option("--body", body, "body file (JSON)")->required();
  num(eq, "fraction", 0.0, "cut volume as a fraction of the body volume")->required();
  num(eq, "dirs", 500, "number of directions");
  num(eq, "tol", 1e-6, "maximal residual for equilibrium in every direction");
  eq->add_option("--out", out, "CSV output");

  auto* bil = app.add_subcommand("billiard", "tangent-chord orbit between two planar bodies");
  bil->add_option("--outer", outer, "outer body file (JSON)")->required();
  bil->add_option("--inner", inner, "inner body file (JSON)")->required();
  num(bil, "start-angle", 0.0, "polar angle of the starting point on the outer boundary");
  num(bil, "steps", 10000, "number of chords");
  num(bil, "power", 4.0, "exponent for the power_sum column");
  num(bil, "closure-tol", 1e-8, "closure tolerance");
  num(bil, "tol", 1e-9, "allowed spread of chord lengths");
  bil->add_option("--out", out, "CSV output");

  auto* ana = app.add_subcommand("analyze", "chi function and apex/shift residuals of a profile");
  ana->add_option("--body", body, "body of revolution file (JSON)")->required();
  num(ana, "sigma", 0.0, "half-length of the apex chord")->required();
  num(ana, "dim", 3, "dimension d");
  num(ana, "points", 201, "number of probe abscissae");
  num(ana, "tol", 1e-6, "allowed residual");
  ana->add_option("--report", out, "CSV output");

  auto* rec = app.add_subcommand("reconstruct", "moving-chord extension of a circular arc");
  rec->add_option("--body", body, "body of revolution file (JSON)")->required();
  num(rec, "sigma", 0.0, "chord half-length")->required();
  rec->add_option("--start", start, "start interval as lo,hi")->required()->allow_extra_args(false);
  num(rec, "tol", 1e-8, "arc deviation tolerance");
  num(rec, "sweep", 512, "tangency samples per pass");
  rec->add_option("--out", out, "CSV output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    cfg.help = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.help = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::UsageError, e.what());
  }

  CLI::App* used = app.get_subcommands().front();
  const std::string name = used->get_name();
  cfg.options = opt[name];
  if (!out.empty()) cfg.output = out;
  if (!outer.empty()) cfg.bodies["outer"] = outer;
  if (!inner.empty()) cfg.bodies["inner"] = inner;
  if (!body.empty()) cfg.bodies["body"] = body;

  if (name == "check") {
    cfg.command = Command::Check;
    if (!(cfg.option("power") >= 0.0)) usage("--power", "must be >= 0");
    require_count("--frames", cfg.option("frames"), 2);
    require_count("--dirs", cfg.option("dirs"), 1);
    require_positive("--tol", cfg.option("tol"));
  } else if (name == "float" || name == "equilibrium") {
    cfg.command = name == "float" ? Command::Float : Command::Equilibrium;
    const double f = cfg.option("fraction");
    if (!(f > 0.0 && f < 1.0)) usage("--fraction", "must lie in (0, 1)");
    require_count("--dirs", cfg.option("dirs"), name == "float" ? 4 : 8);
    require_positive("--tol", cfg.option("tol"));
  } else if (name == "billiard") {
    cfg.command = Command::Billiard;
    require_count("--steps", cfg.option("steps"), 1);
    if (!(cfg.option("power") >= 0.0)) usage("--power", "must be >= 0");
    require_positive("--closure-tol", cfg.option("closure-tol"));
    require_positive("--tol", cfg.option("tol"));
  } else if (name == "analyze") {
    cfg.command = Command::Analyze;
    require_positive("--sigma", cfg.option("sigma"));
    require_count("--dim", cfg.option("dim"), 2);
    require_count("--points", cfg.option("points"), 1);
    require_positive("--tol", cfg.option("tol"));
  } else {
    cfg.command = Command::Reconstruct;
    require_positive("--sigma", cfg.option("sigma"));
    require_positive("--tol", cfg.option("tol"));
    require_count("--sweep", cfg.option("sweep"), 2);
    const auto comma = start.find(',');
    double lo = 0.0;
    double hi = 0.0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used_lo = 0;
      std::size_t used_hi = 0;
      lo = std::stod(start.substr(0, comma), &used_lo);
      hi = std::stod(start.substr(comma + 1), &used_hi);
      if (used_lo != comma || used_hi != start.size() - comma - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      usage("--start", "expected lo,hi");
    }
    if (!(hi > lo)) usage("--start", "needs lo < hi");
    cfg.options["start-lo"] = lo;
    cfg.options["start-hi"] = hi;
  }
  return cfg;
}

Report run(const RunConfig& config) {
  Report rep;
  std::vector<std::string> warnings;
  if (config.command == Command::Float || config.command == Command::Equilibrium) {
    warn_large_fraction(warnings, config.option("fraction"));
  }
  try {
    switch (config.command) {
      case Command::Check: rep = run_check(config); break;
      case Command::Float: rep = run_float(config); break;
      case Command::Equilibrium: rep = run_equilibrium(config); break;
      case Command::Billiard: rep = run_billiard(config); break;
      case Command::Analyze: rep = run_analyze(config); break;
      case Command::Reconstruct: rep = run_reconstruct(config); break;
    }
    if (config.output && !rep.table.empty()) csv::write_atomic(*config.output, rep.table);
  } catch (const Error& e) {
    rep = Report{};
    rep.summary = std::string("error: ") + e.what();
    rep.exit_status = kInputError;
  }
  rep.warnings.insert(rep.warnings.begin(), warnings.begin(), warnings.end());
  return rep;
}

int main_entry(const std::vector<std::string>& args, std::FILE* out, std::FILE* err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const Error& e) {
    std::fprintf(err, "error: %s\n", e.what());
    return kInputError;
  }
  if (cfg.help) {
    std::fputs(cfg.help->c_str(), out);
    return kPass;
  }
  const Report rep = run(cfg);
  for (const auto& w : rep.warnings) std::fprintf(err, "%s\n", w.c_str());
  std::fprintf(rep.exit_status == kInputError ? err : out, "%s\n", rep.summary.c_str());
  return rep.exit_status;
}

}  // namespace equichord::cli
