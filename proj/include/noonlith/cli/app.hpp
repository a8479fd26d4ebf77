#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noonlith/biphoton.hpp"
#include "noonlith/cli/common.hpp"
#include "noonlith/exposure.hpp"
#include "noonlith/gaussian_noon.hpp"
#include "noonlith/io/csv.hpp"
#include "noonlith/io/json.hpp"
#include "noonlith/io/pgm.hpp"
#include "noonlith/pattern_models.hpp"
#include "noonlith/validation.hpp"

namespace noonlith::cli {

namespace detail_cli {

constexpr double unset = std::numeric_limits<double>::quiet_NaN();

inline void add_output_options(CLI::App* sub, OutputOptions& out, std::string default_formats) {
  sub->add_option("--out,-o", out.dir, "output directory")->capture_default_str();
  sub->add_option("--format", out.formats, "comma-separated list of csv, json, pgm")
      ->delimiter(',')
      ->default_str(default_formats);
  sub->add_option("--name", out.name, "file name stem (default depends on the command)");
  sub->add_flag("--timestamp", out.timestamp, "record wall-clock time in JSON meta");
  std::vector<std::string> defaults;
  std::string item;
  for (char c : default_formats) {
    if (c == ',') {
      defaults.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) defaults.push_back(item);
  out.formats = defaults;
}

// ------------------------------------------------------------------ pattern

struct PatternArgs {
  std::string kind;
  double fringes = 4.5;
  int grid = 101;
  std::string detector_width;
  std::string panel = "a";
  std::string norm = "unit_max";
  std::string separation = "1mm";
  std::string distance = "1m";
  std::string wavelength = "1um";
  OutputOptions out;
};

inline void write_map(const CoincidenceMap& map, const std::string& stem, const std::string& kind,
                      const OutputOptions& out, std::ostream& log, io::Json info) {
  if (out.wants("csv")) emit(out.path(stem, "csv"), io::map_to_csv(map), log);
  if (out.wants("json")) {
    info["map"] = io::to_json(map);
    emit(out.path(stem, "json"), io::document(kind, std::move(info), run_meta(out)).dump(2) + "\n",
         log);
  }
  if (out.wants("pgm")) {
    CoincidenceMap scaled = map;
    scaled.normalize(Normalization::UnitMax);
    emit(out.path(stem, "pgm"), io::map_to_pgm(scaled), log);
  }
}

inline int run_pattern(const PatternArgs& a, std::ostream& log) {
  a.out.validate({"csv", "json", "pgm"});
  const auto geom = SlitGeometry::from_wavelength(io::parse_length(a.separation), 0.0,
                                                  io::parse_length(a.distance),
                                                  io::parse_length(a.wavelength));
  detail::require(a.grid >= 1 && a.grid % 2 == 1, "--grid must be an odd detector count");
  const double b = a.detector_width.empty()
                       ? detector_width_for_fringes(geom, a.fringes, a.grid)
                       : io::parse_length(a.detector_width);
  const auto grid = DetectorGrid::with_detectors(a.grid, b);
  const auto norm = normalization_from_string(a.norm);
  if (geom.paraxial_warning()) log << "warning: R < 100 d, paraxial closed forms are approximate\n";

  io::Json info{{"model", a.kind},
                {"separation_m", geom.separation},
                {"screen_distance_m", geom.screen_distance},
                {"wavelength_m", geom.wavelength()},
                {"detectors", grid.size()},
                {"detector_width_m", grid.detector_width},
                {"phase_step", patterns::phase_step(geom, grid)}};

  if (a.kind == "single") {
    const auto p = patterns::single_photon_pattern(geom, grid, norm);
    if (a.out.wants("csv")) emit(a.out.path("single", "csv"), io::pattern_to_csv(p), log);
    if (a.out.wants("json")) {
      info["pattern"] = io::to_json(p);
      emit(a.out.path("single", "json"),
           io::document("pattern", std::move(info), run_meta(a.out)).dump(2) + "\n", log);
    }
    if (a.out.wants("pgm")) {
      auto scaled = p;
      normalize_in_place(scaled.values, Normalization::UnitMax);
      emit(a.out.path("single", "pgm"), io::pattern_to_pgm(scaled), log);
    }
    return ok;
  }
  if (a.kind == "boto" || a.kind == "steuernagel") {
    const auto map = a.kind == "boto" ? patterns::boto_coincidence(geom, grid, norm)
                                      : patterns::steuernagel_coincidence(geom, grid, norm);
    write_map(map, a.kind, "coincidence_map", a.out, log, std::move(info));
    return ok;
  }
  // a1
  std::vector<biphoton::Panel> panels;
  if (a.panel == "all") {
    panels.assign(biphoton::all_panels.begin(), biphoton::all_panels.end());
  } else {
    panels.push_back(biphoton::panel_from_string(a.panel));
  }
  for (auto panel : panels) {
    const auto [alpha, phi] = biphoton::panel_parameters(panel);
    auto panel_info = info;
    panel_info["panel"] = std::string(1, biphoton::panel_letter(panel));
    panel_info["alpha"] = alpha;
    panel_info["phi"] = phi;
    const auto map = biphoton::figure_a1_panel(panel, geom, grid, norm);
    auto out = a.out;
    if (panels.size() > 1) out.name.clear();
    write_map(map, std::string("a1_") + biphoton::panel_letter(panel), "coincidence_map", out, log,
              std::move(panel_info));
  }
  return ok;
}

// ----------------------------------------------------------------- gaussian

struct GaussianArgs {
  std::string mode;
  std::string model = "noon";
  int photons = 2;
  double alpha_deg = 30.0;
  std::string wavelength, distance, waist, x;
  double wavelength_um = unset, distance_cm = unset, waist_mm = unset, x_mm = unset;
  double span = unset;  // scan half-range, meters
  int points = 2001;
  bool no_cubic = false;
  bool check_cubic = false;
  OutputOptions out;
};

inline gaussian::Setup gaussian_setup(const GaussianArgs& a) {
  gaussian::Setup s;
  s.photons = a.photons;
  s.beam_half_angle = io::degrees_to_radians(a.alpha_deg);
  s.wavelength = pick_length(a.wavelength, a.wavelength_um, 1e-6, s.wavelength, "the wavelength");
  s.distance = pick_length(a.distance, a.distance_cm, 1e-2, s.distance, "L");
  s.waist = pick_length(a.waist, a.waist_mm, 1e-3, s.waist, "w");
  s.validate();
  return s;
}

inline void report_cubic(const gaussian::Setup& s, double x, std::ostream& log, io::Json* json) {
  const auto m = gaussian::cubic_term_magnitude(s, x);
  log << "beta            " << io::format_number(s.beta()) << '\n'
      << "x               " << io::format_number(x) << " m\n"
      << "linear coeff    " << io::format_number(m.linear_coeff) << '\n'
      << "cubic coeff     " << io::format_number(m.cubic_coeff) << '\n'
      << "prefactor ratio " << io::format_number(m.ratio) << " (log10 "
      << io::format_number(std::log10(m.ratio)) << ")\n"
      << "term ratio at x " << io::format_number(m.term_ratio) << '\n';
  if (json) {
    *json = io::Json{{"x_m", x},
                     {"linear_coeff", m.linear_coeff},
                     {"cubic_coeff", m.cubic_coeff},
                     {"ratio", m.ratio},
                     {"term_ratio", m.term_ratio}};
  }
}

inline int run_gaussian(const GaussianArgs& a, std::ostream& log) {
  const auto s = gaussian_setup(a);
  const auto model = gaussian::model_from_string(a.model);
  const double x = pick_length(a.x, a.x_mm, 1e-3, 1e-4, "x");
  io::Json info{{"setup", io::to_json(s)}, {"model", gaussian::to_string(model)}};

  if (a.mode == "check-cubic" || a.mode == "visibility") {
    a.out.validate({"json", "csv", "pgm"});
    io::Json payload;
    if (a.mode == "check-cubic") {
      report_cubic(s, x, log, &payload);
    } else {
      const auto v = gaussian::visibility_conditions(s);
      log << "x_low            " << io::format_number(v.x_low) << " m\n"
          << "x_high           " << io::format_number(v.x_high) << " m\n"
          << "alpha > pi/4     " << (v.alpha_above_quarter_pi ? "yes" : "no") << '\n'
          << "always satisfied " << (v.always_satisfied ? "yes" : "no") << '\n'
          << "satisfied at x   " << (v.satisfied(x) ? "yes" : "no") << '\n';
      payload = io::Json{{"x_low_m", v.x_low},
                         {"x_high_m", v.x_high},
                         {"alpha_above_quarter_pi", v.alpha_above_quarter_pi},
                         {"always_satisfied", v.always_satisfied},
                         {"x_m", x},
                         {"satisfied_at_x", v.satisfied(x)}};
    }
    if (a.out.wants("json")) {
      info[a.mode == "check-cubic" ? "cubic" : "visibility"] = std::move(payload);
      emit(a.out.path(a.mode == "check-cubic" ? "cubic" : "visibility", "json"),
           io::document(a.mode, std::move(info), run_meta(a.out)).dump(2) + "\n", log);
    }
    return ok;
  }

  a.out.validate(a.mode == "scan" ? std::set<std::string>{"csv", "json"}
                                  : std::set<std::string>{"csv", "json", "pgm"});
  detail::require(a.points >= 2, "--points must be at least 2");
  const double half = std::isnan(a.span) ? 10.0 * gaussian::expected_fringe_spacing(s) : a.span;
  detail::require(half > 0.0, "scan range must be positive");
  const auto axis = gaussian::linspace(-half, half, static_cast<std::size_t>(a.points));

  if (a.mode == "scan") {
    const auto sc = gaussian::scan(model, s, axis,
                                   a.no_cubic ? gaussian::CubicTerm::Drop : gaussian::CubicTerm::Include);
    if (sc.validity_warning) log << "warning: |x sin(alpha)| exceeds L/10 within the scan\n";
    const std::string stem = std::string("scan_") + std::string(gaussian::to_string(model));
    if (a.out.wants("csv")) emit(a.out.path(stem, "csv"), io::scan_to_csv(sc), log);
    if (a.out.wants("json")) {
      info["cubic_term"] = !a.no_cubic && model == gaussian::Model::Noon;
      info["scan"] = io::to_json(sc);
      emit(a.out.path(stem, "json"),
           io::document("fringe_scan", std::move(info), run_meta(a.out)).dump(2) + "\n", log);
    }
    if (a.check_cubic) report_cubic(s, x, log, nullptr);
    return ok;
  }
  // pair
  detail::require(s.photons == 2, "pair maps are defined for N = 2");
  const auto map = gaussian::pair_map(model, s, axis);
  write_map(map, std::string("pair_") + std::string(gaussian::to_string(model)), "pair_map",
            a.out, log, std::move(info));
  return ok;
}

// ------------------------------------------------------------------- expose

struct ExposeArgs {
  std::string model = "steuernagel";
  std::vector<std::int64_t> pixels{25};
  std::vector<int> photons{2};
  std::int64_t trials = 200;
  std::uint64_t seed = 0;
  std::int64_t events = 100;
  std::string weighting = "uniform";
  double theta = unset;
  double node_threshold = 1e-3;
  std::uint64_t max_bunches = std::uint64_t{1} << 40;
  OutputOptions out;
};

inline int run_expose(const ExposeArgs& a, std::ostream& log) {
  a.out.validate({"csv", "json"});
  detail::require(a.weighting == "uniform" || a.weighting == "fringe",
                  "--weighting must be uniform or fringe");
  const auto model = patterns::model_from_string(a.model);

  std::vector<exposure::ScalingPoint> points;
  io::Json runs = io::Json::array();
  for (auto px : a.pixels)
    for (int n : a.photons) {
      exposure::Config c;
      c.model = model;
      c.pixels = px;
      c.photons = n;
      c.trials = a.trials;
      c.seed = a.seed;
      c.target_events = a.events;
      c.node_threshold = a.node_threshold;
      c.max_bunches = a.max_bunches;
      if (a.weighting == "fringe") {
        // default: the grid spans 4.5 single-photon fringes
        const double theta = std::isnan(a.theta) ? 4.5 * std::numbers::pi / static_cast<double>(px) : a.theta;
        c.weighting = exposure::Weighting::fringe(theta);
      }
      auto r = exposure::simulate_exposure(c);
      runs.push_back(io::Json{{"config", io::to_json(c)}, {"result", io::to_json(r)}});
      points.push_back({px, n, std::move(r)});
    }

  // ratio column: mean at this N over the mean at the next smaller N, same S_px
  std::string csv = "pixels,N,mean_bunches,std_error,ratio_prev_N,law_ratio_prev_N\n";
  io::Json rows = io::Json::array();
  log << "pixels  N  mean_bunches  std_error  ratio_prev_N  law_ratio\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const exposure::ScalingPoint* prev = nullptr;
    for (const auto& q : points)
      if (q.pixels == p.pixels && q.photons < p.photons && (!prev || q.photons > prev->photons))
        prev = &q;
    io::Json row{{"pixels", p.pixels},
                 {"N", p.photons},
                 {"mean_bunches", p.result.mean_bunches},
                 {"std_error", p.result.std_error}};
    std::string ratio, law;
    if (prev) {
      const double r = p.result.mean_bunches / prev->result.mean_bunches;
      const double l = patterns::exposure_scaling_law(model, p.pixels, p.photons) /
                       patterns::exposure_scaling_law(model, prev->pixels, prev->photons);
      row["ratio_prev_N"] = r;
      row["law_ratio_prev_N"] = l;
      ratio = io::format_number(r);
      law = io::format_number(l);
    } else {
      row["ratio_prev_N"] = nullptr;
      row["law_ratio_prev_N"] = nullptr;
    }
    csv += std::to_string(p.pixels) + "," + std::to_string(p.photons) + "," +
           io::format_number(p.result.mean_bunches) + "," + io::format_number(p.result.std_error) +
           "," + ratio + "," + law + "\n";
    log << p.pixels << "  " << p.photons << "  " << io::format_number(p.result.mean_bunches) << "  "
        << io::format_number(p.result.std_error) << "  " << (ratio.empty() ? "-" : ratio) << "  "
        << (law.empty() ? "-" : law) << '\n';
    rows.push_back(std::move(row));
  }

  io::Json fit = nullptr;
  try {
    const auto f = exposure::fit_scaling(points);
    fit = io::Json::object();
    if (f.exponent_S) {
      fit["exponent_S"] = *f.exponent_S;
      fit["r_squared_S"] = *f.r_squared_S;
      fit["fixed_N"] = *f.fixed_photons;
      log << "exponent_S = " << io::format_number(*f.exponent_S) << " at N = " << *f.fixed_photons
          << '\n';
    }
    if (f.exponent_N_base) {
      fit["exponent_N_base"] = *f.exponent_N_base;
      fit["r_squared_N"] = *f.r_squared_N;
      fit["fixed_pixels"] = *f.fixed_pixels;
      log << "exponent_N_base = " << io::format_number(*f.exponent_N_base)
          << " at S_px = " << *f.fixed_pixels << '\n';
    }
  } catch (const InvalidArgument&) {
    // too few sweep points for a fit; the table stands on its own
  }

  if (a.out.wants("csv")) emit(a.out.path("expose_summary", "csv"), csv, log);
  if (a.out.wants("json")) {
    io::Json data{{"model", patterns::to_string(model)},
                  {"runs", std::move(runs)},
                  {"summary", std::move(rows)},
                  {"fit", std::move(fit)}};
    emit(a.out.path("expose", "json"),
         io::document("exposure", std::move(data), run_meta(a.out)).dump(2) + "\n", log);
  }
  return ok;
}

// ----------------------------------------------------------------- validate

struct ValidateArgs {
  bool quick = false;
  std::string mutate;
  std::string report;
};

inline int run_validate(const ValidateArgs& a, std::ostream& log) {
  validation::Context ctx;
  if (!a.mutate.empty()) {
    detail::require(a.mutate == "s-minus-t", "unknown mutation '" + a.mutate + "'");
    ctx.steuernagel = validation::mutated_steuernagel;
    log << "mutation active: Steuernagel map uses s - t\n";
  }
  std::vector<std::string> failed;
  io::Json checks = io::Json::array();
  const auto results = validation::run_checks(ctx, a.quick, [&](const validation::CheckResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%7.2fs", r.seconds);
    log << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << secs << "  " << r.description
        << "  [" << r.detail << "]\n"
        << std::flush;
    if (!r.passed) failed.push_back(r.id);
    checks.push_back(io::Json{{"id", r.id},
                              {"description", r.description},
                              {"passed", r.passed},
                              {"detail", r.detail},
                              {"seconds", r.seconds}});
  });
  log << results.size() - failed.size() << "/" << results.size() << " checks passed\n";
  if (!failed.empty()) {
    log << "failing:";
    for (const auto& id : failed) log << ' ' << id;
    log << '\n';
  }
  if (!a.report.empty()) {
    io::Json data{{"quick", a.quick}, {"mutation", a.mutate}, {"checks", std::move(checks)}};
    emit(a.report, io::document("validation_report", std::move(data)).dump(2) + "\n", log);
  }
  return failed.empty() ? ok : validation_failure;
}

}  // namespace detail_cli

/// Entry point shared by the executable and the tests. Human-readable
/// output goes to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using namespace detail_cli;
  CLI::App app{"Two-photon interference patterns, Gaussian-beam NOON analysis and exposure "
               "Monte Carlo"};
  app.name("noonlith");
  app.require_subcommand(1);

  PatternArgs pat;
  auto* p = app.add_subcommand("pattern", "closed-form screen patterns and coincidence maps");
  p->add_option("kind", pat.kind, "single | boto | steuernagel | a1")
      ->required()
      ->check(CLI::IsMember({"single", "boto", "steuernagel", "a1"}));
  p->add_option("--fringes", pat.fringes, "single-photon fringes spanned by the grid")
      ->capture_default_str();
  p->add_option("--grid", pat.grid, "number of detectors (odd)")->capture_default_str();
  p->add_option("--detector-width,-b", pat.detector_width,
                "detector width with unit, overrides --fringes");
  p->add_option("--panel", pat.panel, "reference state a-f, or all (a1 only)")->capture_default_str();
  p->add_option("--norm", pat.norm, "unit_max | unit_sum")->capture_default_str();
  p->add_option("--d", pat.separation, "slit separation")->capture_default_str();
  p->add_option("--R", pat.distance, "slit-to-screen distance")->capture_default_str();
  p->add_option("--lambda", pat.wavelength, "wavelength")->capture_default_str();
  add_output_options(p, pat.out, "csv,pgm");

  GaussianArgs gau;
  auto* g = app.add_subcommand("gaussian", "Gaussian-beam NOON and delta-state analysis");
  g->add_option("mode", gau.mode, "scan | pair | check-cubic | visibility")
      ->required()
      ->check(CLI::IsMember({"scan", "pair", "check-cubic", "visibility"}));
  g->add_option("--model", gau.model, "noon | delta")->capture_default_str();
  g->add_option("--N", gau.photons, "photon number")->capture_default_str();
  g->add_option("--alpha-deg", gau.alpha_deg, "beam half-angle in degrees")->capture_default_str();
  g->add_option("--lambda", gau.wavelength, "wavelength with unit");
  g->add_option("--lambda-um", gau.wavelength_um, "wavelength in micrometers");
  g->add_option("--L", gau.distance, "waist distance with unit");
  g->add_option("--L-cm", gau.distance_cm, "waist distance in centimeters");
  g->add_option("--w", gau.waist, "beam waist with unit");
  g->add_option("--w-mm", gau.waist_mm, "beam waist in millimeters");
  g->add_option("--x", gau.x, "evaluation point with unit (check-cubic, visibility)");
  g->add_option("--x-mm", gau.x_mm, "evaluation point in millimeters");
  g->add_option("--span", gau.span, "scan half-range in meters (default 10 fringes)");
  g->add_option("--points", gau.points, "samples per axis")->capture_default_str();
  g->add_flag("--no-cubic", gau.no_cubic, "drop the x^3 phase term");
  g->add_flag("--check-cubic", gau.check_cubic, "also print the cubic-term report");
  add_output_options(g, gau.out, "csv");

  ExposeArgs exp;
  auto* e = app.add_subcommand("expose", "Monte Carlo exposure-time statistics");
  e->add_option("--model", exp.model, "boto | steuernagel")->capture_default_str();
  e->add_option("--pixels", exp.pixels, "pixel counts")->delimiter(',')->default_str("25");
  e->add_option("--N", exp.photons, "photon numbers")->delimiter(',')->default_str("2");
  e->add_option("--trials", exp.trials, "independent trials per point")->capture_default_str();
  e->add_option("--seed", exp.seed, "base seed")->capture_default_str();
  e->add_option("--events,-M", exp.events, "events required per pixel")->capture_default_str();
  e->add_option("--weighting", exp.weighting, "uniform | fringe")->capture_default_str();
  e->add_option("--theta", exp.theta, "fringe phase per pixel (default 4.5 pi / pixels)");
  e->add_option("--node-threshold", exp.node_threshold, "node exclusion level")
      ->capture_default_str();
  e->add_option("--max-bunches", exp.max_bunches, "per-trial bunch budget")->capture_default_str();
  add_output_options(e, exp.out, "json,csv");

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "run the invariant and oracle-equivalence suite");
  v->add_flag("--quick", val.quick, "fast subset");
  v->add_option("--mutate", val.mutate, "inject a known defect (s-minus-t)");
  v->add_option("--report", val.report, "write a JSON report to this path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (p->parsed()) return run_pattern(pat, out);
    if (g->parsed()) return run_gaussian(gau, out);
    if (e->parsed()) return run_expose(exp, out);
    return run_validate(val, out);
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return io_error;
  } catch (const ConvergenceError& ex) {
    err << "error: " << ex.what() << '\n';
    return no_convergence;
  } catch (const BudgetExceeded& ex) {
    err << "error: " << ex.what() << '\n';
    return no_convergence;
  } catch (const InvalidArgument& ex) {
    err << "error: " << ex.what() << '\n';
    return usage;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "error: " << ex.what() << '\n';
    return io_error;
  }
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args));
}

}  // namespace noonlith::cli
