#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "noonlith/biphoton.hpp"
#include "noonlith/exposure.hpp"
#include "noonlith/fringes.hpp"
#include "noonlith/gaussian_noon.hpp"
#include "noonlith/io/csv.hpp"
#include "noonlith/io/pgm.hpp"
#include "noonlith/markov_oracle.hpp"
#include "noonlith/pattern_models.hpp"
#include "noonlith/propagation.hpp"

namespace noonlith::validation {

using biphoton::complex;
using std::numbers::pi;

using MapModel =
    std::function<CoincidenceMap(const SlitGeometry&, const DetectorGrid&, Normalization)>;

/// Implementations under test. Checks call through here so a deliberately
/// broken model can be swapped in to confirm the suite notices.
struct Context {
  MapModel steuernagel = [](const SlitGeometry& g, const DetectorGrid& d, Normalization n) {
    return patterns::steuernagel_coincidence(g, d, n);
  };
};

/// Steuernagel map with s - t in place of s + t.
inline CoincidenceMap mutated_steuernagel(const SlitGeometry& geom, const DetectorGrid& grid,
                                          Normalization norm) {
  const double theta = patterns::phase_step(geom, grid);
  CoincidenceMap map(grid.indices(), norm);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double c = std::cos(theta * (grid.index_at(i) - grid.index_at(j)));
      map.at(i, j) = c * c;
    }
  map.normalize(norm);
  return map;
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string id;
  std::string description;
  bool quick = true;
  std::function<Outcome(const Context&)> run;
};

struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail_val {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline Outcome outcome(bool ok, const std::string& detail) { return {ok, detail}; }

/// Reference slit geometry: d = 1 mm, R = 1 m, lambda = 1 um.
inline SlitGeometry reference_geometry() { return SlitGeometry::from_wavelength(1e-3, 0.0, 1.0, 1e-6); }

/// 101 detectors spanning 4.5 single-photon fringes.
inline DetectorGrid fringe_grid(const SlitGeometry& g, int detectors = 101, double fringes = 4.5) {
  return DetectorGrid::with_detectors(detectors, detector_width_for_fringes(g, fringes, detectors));
}

inline gaussian::Setup reference_setup() { return gaussian::Setup{}; }

/// Relative L2 distance between two complex samples.
inline double relative_l2(const std::vector<complex>& a, const std::vector<complex>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace detail_val

/// Propagates `field`, supported on [lo, hi], by `dz` with the Fresnel kernel
/// and returns the result at x.
template <class Field>
complex fresnel_propagate(const Field& field, double lo, double hi, double x, double dz,
                          double k) {
  quadrature::Options opt;
  opt.rel_tol = 1e-10;
  opt.initial_panels = 16;
  opt.max_depth = 20;
  auto r = quadrature::integrate(
      [&](double xs) { return biphoton::fresnel_propagator(x, xs, dz, k) * field(xs); }, lo, hi,
      opt);
  if (!r.converged) throw ConvergenceError("Fresnel quadrature did not converge");
  return r.value;
}

// ---------------------------------------------------------------- checks

inline std::vector<Check> pattern_checks() {
  using namespace detail_val;
  std::vector<Check> out;
  out.push_back({"PM-1", "4.5-fringe grid: single-photon pattern 4-5 maxima, diagonals 9", true,
                 [](const Context& ctx) {
                   const auto g = reference_geometry();
                   const auto grid = fringe_grid(g);
                   const auto single = count_maxima(patterns::single_photon_pattern(g, grid).values);
                   const auto boto = count_maxima(patterns::boto_coincidence(g, grid).diagonal());
                   const auto st = count_maxima(
                       ctx.steuernagel(g, grid, Normalization::UnitMax).diagonal());
                   return outcome(single >= 4 && single <= 5 && boto == 9 && st == 9,
                                  "single=" + std::to_string(single) + " boto=" +
                                      std::to_string(boto) + " steuernagel=" + std::to_string(st));
                 }});
  out.push_back({"PM-2", "Steuernagel diagonal equals Boto diagonal within 1e-12", true,
                 [](const Context& ctx) {
                   const auto g = reference_geometry();
                   const auto grid = fringe_grid(g);
                   const auto b = patterns::boto_coincidence(g, grid).diagonal();
                   const auto s = ctx.steuernagel(g, grid, Normalization::UnitMax).diagonal();
                   const double diff = max_abs_difference(s, b);
                   return outcome(diff <= 1e-12, "max |diff| = " + fmt(diff));
                 }});
  out.push_back({"PM-3", "coincidence maps symmetric; Boto off-diagonal exactly zero", true,
                 [](const Context& ctx) {
                   const auto g = reference_geometry();
                   const auto grid = fringe_grid(g, 41);
                   const auto b = patterns::boto_coincidence(g, grid);
                   const auto s = ctx.steuernagel(g, grid, Normalization::UnitMax);
                   double off = 0.0;
                   for (std::size_t i = 0; i < b.size(); ++i)
                     for (std::size_t j = 0; j < b.size(); ++j)
                       if (i != j) off += b.at(i, j);
                   const double asym = std::max(b.asymmetry(), s.asymmetry());
                   return outcome(off == 0.0 && asym <= 1e-12,
                                  "boto off-diagonal mass = " + fmt(off) +
                                      ", asymmetry = " + fmt(asym));
                 }});
  out.push_back({"PM-4", "Steuernagel map equals the propagated NOON map within 1e-9", true,
                 [](const Context& ctx) {
                   const auto g = reference_geometry();
                   const auto grid = fringe_grid(g, 41);
                   const auto s = ctx.steuernagel(g, grid, Normalization::UnitMax);
                   const auto n = biphoton::noon_map(g, grid, Normalization::UnitMax);
                   const double diff = max_abs_difference(s.values, n.values);
                   return outcome(diff <= 1e-9, "max |diff| = " + fmt(diff));
                 }});
  out.push_back({"PM-5", "exposure law ratios: Steuernagel 25 and 1e4, Boto 1", true,
                 [](const Context&) {
                   using patterns::Model;
                   const double r25 = patterns::exposure_scaling_law(Model::Steuernagel, 25, 3) /
                                      patterns::exposure_scaling_law(Model::Steuernagel, 25, 2);
                   const double r1e4 =
                       patterns::exposure_scaling_law(Model::Steuernagel, 10000, 3) /
                       patterns::exposure_scaling_law(Model::Steuernagel, 10000, 2);
                   const double rb = patterns::exposure_scaling_law(Model::Boto, 25, 3) /
                                     patterns::exposure_scaling_law(Model::Boto, 25, 2);
                   const bool ok = std::abs(r25 - 25.0) < 1e-9 &&
                                   std::abs(r1e4 - 1e4) < 1e-6 && rb == 1.0;
                   return outcome(ok, "25px: " + fmt(r25) + ", 1e4px: " + fmt(r1e4) +
                                          ", boto: " + fmt(rb));
                 }});
  return out;
}

inline std::vector<Check> biphoton_checks() {
  using namespace detail_val;
  std::vector<Check> out;
  out.push_back({"BP-1", "(alpha, phi) survive a raw-amplitude round trip", true,
                 [](const Context&) {
                   double worst = 0.0;
                   for (double a : {0.3, 1.0, 2.0, 3.0, 4.0, 5.5})
                     for (double p : {0.0, 0.7, 2.5, 5.0}) {
                       const auto st = biphoton::BiphotonSlitState::from_parameters(a, p);
                       auto raw = st.amplitudes();
                       const complex scale = std::polar(2.5, 0.9);
                       raw.c11 *= scale;
                       raw.c12 *= scale;
                       raw.c21 *= scale;
                       raw.c22 *= scale;
                       const auto back = biphoton::BiphotonSlitState::from_raw(raw);
                       const auto n0 = st.normalized(), n1 = back.normalized();
                       worst = std::max({worst, std::abs(n0.c11 - n1.c11),
                                         std::abs(n0.c12 - n1.c12)});
                     }
                   return outcome(worst < 1e-12, "max amplitude error = " + fmt(worst));
                 }});
  out.push_back({"BP-2", "panel e equals the cos^2 cos^2 product within 1e-9", true,
                 [](const Context&) {
                   const auto g = reference_geometry();
                   const auto grid = fringe_grid(g, 41);
                   const auto e = biphoton::figure_a1_panel(biphoton::Panel::E, g, grid);
                   const auto single = patterns::single_photon_pattern(g, grid);
                   double worst = 0.0;
                   for (std::size_t i = 0; i < e.size(); ++i)
                     for (std::size_t j = 0; j < e.size(); ++j)
                       worst = std::max(worst, std::abs(e.at(i, j) - single.values[i] *
                                                                         single.values[j]));
                   return outcome(worst <= 1e-9, "max |diff| = " + fmt(worst));
                 }});
  out.push_back({"BP-3", "panel d diagonal is flat", true, [](const Context&) {
                   const auto g = reference_geometry();
                   const auto grid = fringe_grid(g, 41);
                   const auto d = biphoton::figure_a1_panel(biphoton::Panel::D, g, grid);
                   const auto diag = d.diagonal();
                   const double mean = std::accumulate(diag.begin(), diag.end(), 0.0) /
                                       static_cast<double>(diag.size());
                   double var = 0.0;
                   for (double v : diag) var += (v - mean) * (v - mean);
                   var /= static_cast<double>(diag.size());
                   return outcome(var < 1e-12 * d.max_value(), "variance = " + fmt(var));
                 }});
  out.push_back({"BP-4", "slit amplitudes of default profiles obey c11 = c22, c12 = c21", true,
                 [](const Context&) {
                   const auto g = reference_geometry();
                   const auto prof = biphoton::PumpPhaseMatchProfiles::standard(5e-3, 1e-3,
                                                                                g.wavenumber);
                   const auto st = biphoton::slit_amplitudes(prof, g);
                   const auto c = st.amplitudes();
                   const double scale =
                       std::max({std::abs(c.c11), std::abs(c.c12), std::abs(c.c21),
                                 std::abs(c.c22)});
                   const double asym =
                       std::max(std::abs(c.c11 - c.c22), std::abs(c.c12 - c.c21)) / scale;
                   return outcome(asym <= 1e-9, "relative asymmetry = " + fmt(asym));
                 }});
  out.push_back({"BP-5", "Fresnel propagation composes: h(z1) then h(z2) equals h(z1+z2)",
                 true, [](const Context&) {
                   const double k = 2.0 * pi / 1e-6, w0 = 50e-6, z1 = 0.01, z2 = 0.015;
                   auto source = [w0](double x) { return complex(std::exp(-x * x / (w0 * w0)), 0.0); };
                   auto at_z1 = [&](double x) {
                     return fresnel_propagate(source, -8 * w0, 8 * w0, x, z1, k);
                   };
                   const double w1 = w0 * std::sqrt(1.0 + std::pow(z1 * 2.0 / (k * w0 * w0), 2));
                   std::vector<complex> two_step, direct;
                   for (double x = -2 * w0; x <= 2 * w0 + 1e-12; x += w0 / 4) {
                     two_step.push_back(fresnel_propagate(at_z1, -8 * w1, 8 * w1, x, z2, k));
                     direct.push_back(fresnel_propagate(source, -8 * w0, 8 * w0, x, z1 + z2, k));
                   }
                   const double err = relative_l2(two_step, direct);
                   return outcome(err <= 1e-6, "relative L2 = " + fmt(err));
                 }});
  auto oracle = [](const biphoton::PumpPhaseMatchProfiles& prof) {
    auto g = reference_geometry();
    g.slit_width = biphoton::default_slit_width(g);
    const auto grid = fringe_grid(g, 31);
    const auto st = biphoton::slit_amplitudes(prof, g);
    const auto closed = biphoton::detection_amplitude(st, g).sample(grid, Normalization::UnitSum);
    const auto num = biphoton::propagate_numeric(prof, g, 0.0, g.screen_distance, grid);
    const double d = relative_l1_distance(num, closed);
    return outcome(d <= 0.02, "relative L1 = " + fmt(d) + " (alpha = " + fmt(st.alpha()) + ")");
  };
  out.push_back({"BP-6", "numerical oracle matches closed form, product-state profiles", false,
                 [oracle](const Context&) {
                   return oracle(biphoton::PumpPhaseMatchProfiles::gaussian(5e-3, 5e-3));
                 }});
  out.push_back({"BP-7", "numerical oracle matches closed form, NOON-limit profiles", false,
                 [oracle](const Context&) {
                   return oracle(biphoton::PumpPhaseMatchProfiles::gaussian(5e-3, 20e-6));
                 }});
  return out;
}

inline std::vector<Check> gaussian_checks() {
  using namespace detail_val;
  using gaussian::Model;
  std::vector<Check> out;
  out.push_back({"GN-1", "fringe spacing lambda/(2 N sin alpha) within 0.5%, N = 1..4", true,
                 [](const Context&) {
                   double worst = 0.0;
                   for (int n = 1; n <= 4; ++n) {
                     const auto s = reference_setup().with_photons(n);
                     const double expect = gaussian::expected_fringe_spacing(s);
                     const auto x = gaussian::linspace(0.0, 10 * expect, 2001);
                     const auto sc = gaussian::scan(Model::Noon, s, x);
                     const auto spacing = median_peak_spacing(sc.positions, sc.values);
                     if (!spacing) return outcome(false, "no peaks found for N=" + std::to_string(n));
                     worst = std::max(worst, std::abs(*spacing / expect - 1.0));
                   }
                   return outcome(worst <= 0.005, "worst relative deviation = " + fmt(worst));
                 }});
  out.push_back({"GN-2", "envelope half-width scales as 1/sqrt(N) within 0.5%", true,
                 [](const Context&) {
                   auto width = [](int n) {
                     const auto s = reference_setup().with_photons(n);
                     const double guess = std::sqrt(2.0 / gaussian::noon_envelope_coefficient(s));
                     const auto x = gaussian::linspace(0.0, 2.0 * guess, 20001);
                     const auto sc = gaussian::scan(Model::Noon, s, x);
                     return half_width_at_level(sc.positions, sc.envelope, std::exp(-2.0)).value_or(0.0);
                   };
                   const double w1 = width(1);
                   double worst = 0.0;
                   for (int n = 2; n <= 4; ++n)
                     worst = std::max(worst, std::abs(width(n) * std::sqrt(double(n)) / w1 - 1.0));
                   return outcome(worst <= 0.005, "worst relative deviation = " + fmt(worst));
                 }});
  out.push_back({"GN-3", "linear/cubic prefactor ratio within one decade of 1e14", true,
                 [](const Context&) {
                   const auto m = gaussian::cubic_term_magnitude(reference_setup(), 1e-4);
                   const double decades = std::abs(std::log10(m.ratio) - 14.0);
                   return outcome(decades <= 1.0, "ratio = " + fmt(m.ratio));
                 }});
  out.push_back({"GN-4", "envelope coefficient w-derivatives have opposite signs at beta = 1e4",
                 true, [](const Context&) {
                   auto s = reference_setup();
                   s.waist = std::sqrt(s.wavelength * s.distance / (pi * 100.0));  // beta = 1e4
                   const double h = 1e-4 * s.waist;
                   const double dn = (gaussian::noon_envelope_coefficient(s.with_waist(s.waist + h)) -
                                      gaussian::noon_envelope_coefficient(s.with_waist(s.waist - h))) /
                                     (2 * h);
                   const double dd = (gaussian::delta_envelope_coefficient(s.with_waist(s.waist + h)) -
                                      gaussian::delta_envelope_coefficient(s.with_waist(s.waist - h))) /
                                     (2 * h);
                   return outcome(dn * dd < 0.0, "d/dw noon = " + fmt(dn) + ", delta = " + fmt(dd));
                 }});
  out.push_back({"GN-5", "N = 1 scans of both models coincide at beta = 1", true,
                 [](const Context&) {
                   auto s = reference_setup().with_photons(1);
                   s.waist = std::sqrt(s.wavelength * s.distance / pi);  // beta = 1
                   const auto x = gaussian::linspace(-0.02, 0.02, 801);
                   const auto a = gaussian::scan(Model::Noon, s, x, gaussian::CubicTerm::Drop);
                   const auto b = gaussian::scan(Model::Delta, s, x);
                   const double diff = max_abs_difference(a.values, b.values);
                   return outcome(diff <= 1e-9, "max |diff| = " + fmt(diff));
                 }});
  out.push_back({"GN-6", "values never exceed the envelope; scans are 1 at the origin", true,
                 [](const Context&) {
                   bool ok = true;
                   for (auto m : {Model::Noon, Model::Delta})
                     for (int n = 1; n <= 4; ++n) {
                       const auto s = reference_setup().with_photons(n);
                       const auto x = gaussian::linspace(-1e-3, 1e-3, 2001);
                       const auto sc = gaussian::scan(m, s, x);
                       for (std::size_t i = 0; i < x.size(); ++i)
                         ok = ok && sc.values[i] <= sc.envelope[i] + 1e-12;
                       ok = ok && sc.values[1000] == 1.0;
                     }
                   return outcome(ok, ok ? "ok" : "bound violated");
                 }});
  out.push_back({"GN-7", "visibility: alpha = pi/3 always satisfied, thresholds ordered", true,
                 [](const Context&) {
                   auto s = reference_setup();
                   s.beam_half_angle = pi / 3.0;
                   const auto v = gaussian::visibility_conditions(s);
                   auto t = reference_setup();
                   t.waist = std::sqrt(t.wavelength * t.distance / (pi * 100.0));
                   const auto u = gaussian::visibility_conditions(t);
                   const double mid = 0.5 * (u.x_low + u.x_high);
                   const bool ok = v.always_satisfied && v.alpha_above_quarter_pi &&
                                   !u.always_satisfied && !u.satisfied(mid);
                   return outcome(ok, "pi/3: x_low=" + fmt(v.x_low) + " x_high=" + fmt(v.x_high) +
                                          "; pi/6, beta=1e4: x_low=" + fmt(u.x_low) +
                                          " x_high=" + fmt(u.x_high));
                 }});
  return out;
}

inline std::vector<Check> exposure_checks() {
  using namespace detail_val;
  using patterns::Model;
  std::vector<Check> out;
  out.push_back({"EX-1", "Monte Carlo mean within 3 standard errors of the exact chain", true,
                 [](const Context&) {
                   std::string detail;
                   bool ok = true;
                   for (auto model : {Model::Steuernagel, Model::Boto})
                     for (std::int64_t px : {2, 4, 5})
                       for (int n : {2, 3}) {
                         exposure::Config c;
                         c.model = model;
                         c.pixels = px;
                         c.photons = n;
                         c.trials = 400;
                         c.seed = 11;
                         const auto r = exposure::simulate_exposure(c);
                         const double exact = exposure::exact_expected_bunches(c);
                         const double z = std::abs(r.mean_bunches - exact) / r.std_error;
                         if (z > 3.0) {
                           ok = false;
                           detail += std::string(patterns::to_string(model)) + " S=" +
                                     std::to_string(px) + " N=" + std::to_string(n) +
                                     " z=" + fmt(z) + "; ";
                         }
                       }
                   return outcome(ok, ok ? "all within 3 SE" : detail);
                 }});
  out.push_back({"EX-2", "Steuernagel, 25 pixels: N=3 / N=2 mean ratio 25 +- 15%", true,
                 [](const Context&) {
                   exposure::Config c;
                   c.pixels = 25;
                   c.trials = 200;
                   c.seed = 7;
                   c.photons = 2;
                   const double m2 = exposure::simulate_exposure(c).mean_bunches;
                   c.photons = 3;
                   const double m3 = exposure::simulate_exposure(c).mean_bunches;
                   const double ratio = m3 / m2;
                   return outcome(std::abs(ratio / 25.0 - 1.0) <= 0.15, "ratio = " + fmt(ratio));
                 }});
  out.push_back({"EX-3", "Boto exponents: S ~ 1, N base ~ 1", true, [](const Context&) {
                   std::vector<exposure::ScalingPoint> pts;
                   for (std::int64_t px : {8, 16, 32, 64}) {
                     exposure::Config c;
                     c.model = Model::Boto;
                     c.pixels = px;
                     c.target_events = 100;
                     c.trials = 50;
                     c.seed = 3;
                     pts.push_back({px, 2, exposure::simulate_exposure(c)});
                   }
                   for (int n : {3, 4}) {
                     exposure::Config c;
                     c.model = Model::Boto;
                     c.pixels = 8;
                     c.photons = n;
                     c.target_events = 100;
                     c.trials = 50;
                     c.seed = 3;
                     pts.push_back({8, n, exposure::simulate_exposure(c)});
                   }
                   const auto f = exposure::fit_scaling(pts);
                   const bool ok = std::abs(*f.exponent_S - 1.0) <= 0.1 &&
                                   std::abs(*f.exponent_N_base - 1.0) <= 0.05;
                   return outcome(ok, "exponent_S = " + fmt(*f.exponent_S) +
                                          ", exponent_N_base = " + fmt(*f.exponent_N_base));
                 }});
  out.push_back({"EX-4", "Steuernagel exponent_S = N +- 0.1 (N = 2 and 3, M = 100)", false,
                 [](const Context&) {
                   std::string detail;
                   bool ok = true;
                   const std::vector<std::pair<int, std::vector<std::int64_t>>> sweeps{
                       {2, {8, 16, 32, 64}}, {3, {4, 8, 16}}};
                   for (const auto& [n, pixels] : sweeps) {
                     std::vector<exposure::ScalingPoint> pts;
                     for (auto px : pixels) {
                       exposure::Config c;
                       c.pixels = px;
                       c.photons = n;
                       c.target_events = 100;
                       c.trials = 20;
                       c.seed = 5;
                       pts.push_back({px, n, exposure::simulate_exposure(c)});
                     }
                     const double e = *exposure::fit_scaling(pts).exponent_S;
                     ok = ok && std::abs(e - n) <= 0.1;
                     detail += "N=" + std::to_string(n) + ": " + fmt(e) + "; ";
                   }
                   return outcome(ok, detail);
                 }});
  out.push_back({"EX-5", "identical config gives identical results", true, [](const Context&) {
                   exposure::Config c;
                   c.pixels = 9;
                   c.photons = 2;
                   c.trials = 64;
                   c.seed = 99;
                   c.weighting = exposure::Weighting::fringe(0.2);
                   const auto a = exposure::simulate_exposure(c);
                   const auto b = exposure::simulate_exposure(c);
                   return outcome(a.per_trial == b.per_trial && a.pixel_events == b.pixel_events,
                                  "mean = " + fmt(a.mean_bunches));
                 }});
  out.push_back({"EX-6", "fringe-weighted event frequencies follow cos^2 (chi^2, alpha = 0.01)",
                 true, [](const Context&) {
                   std::string detail;
                   bool ok = true;
                   for (auto model : {Model::Boto, Model::Steuernagel}) {
                     exposure::Config c;
                     c.model = model;
                     c.pixels = 9;
                     c.photons = 2;
                     c.weighting = exposure::Weighting::fringe(0.15);
                     c.target_events = 15000;
                     c.seed = 21;
                     const auto r = exposure::simulate_exposure(c);
                     const auto p = exposure::exact_event_probabilities(c);
                     const double psum = std::accumulate(p.begin(), p.end(), 0.0);
                     const double total = static_cast<double>(
                         std::accumulate(r.pixel_events.begin(), r.pixel_events.end(), std::uint64_t{0}));
                     double chi2 = 0.0;
                     int dof = -1;
                     for (std::size_t i = 0; i < p.size(); ++i) {
                       const double expect = total * p[i] / psum;
                       if (expect <= 0.0) continue;
                       const double d = static_cast<double>(r.pixel_events[i]) - expect;
                       chi2 += d * d / expect;
                       ++dof;
                     }
                     const double pval = boost::math::cdf(
                         boost::math::complement(boost::math::chi_squared(dof), chi2));
                     ok = ok && pval >= 0.01 && total >= 1e5;
                     detail += std::string(patterns::to_string(model)) + ": events=" + fmt(total) +
                               " p=" + fmt(pval) + "; ";
                   }
                   return outcome(ok, detail);
                 }});
  return out;
}

inline std::vector<Check> io_checks() {
  using namespace detail_val;
  std::vector<Check> out;
  out.push_back({"IO-1", "CSV round trip is exact", true, [](const Context&) {
                   const auto g = reference_geometry();
                   const auto m = biphoton::figure_a1_panel(biphoton::Panel::C, g, fringe_grid(g, 21));
                   const auto back = io::map_from_csv(io::map_to_csv(m));
                   const auto sc = gaussian::scan(gaussian::Model::Noon, reference_setup(),
                                                  gaussian::linspace(-1e-5, 1e-5, 101));
                   const auto sback = io::scan_from_csv(io::scan_to_csv(sc));
                   const bool ok = back.values == m.values && back.axis == m.axis &&
                                   sback.values == sc.values && sback.envelope == sc.envelope &&
                                   sback.positions == sc.positions;
                   return outcome(ok, ok ? "bit-identical" : "values differ");
                 }});
  out.push_back({"IO-2", "PGM pixels equal round(65535 v / max) on a 3x3 map", true,
                 [](const Context&) {
                   CoincidenceMap m({-1, 0, 1}, Normalization::UnitMax);
                   const double v[9] = {0.0, 0.1, 0.2, 0.3, 0.5, 0.25, 1.0, 0.75, 0.6};
                   std::copy(v, v + 9, m.values.begin());
                   const auto img = io::parse_pgm(io::map_to_pgm(m));
                   bool ok = img.width == 3 && img.height == 3 && img.maxval == 65535;
                   for (std::size_t row = 0; ok && row < 3; ++row)
                     for (std::size_t col = 0; col < 3; ++col)
                       ok = ok && img.pixels[row * 3 + col] ==
                                      std::lround(65535.0 * m.at(col, 2 - row));
                   return outcome(ok, ok ? "all pixels match" : "pixel mismatch");
                 }});
  return out;
}

inline std::vector<Check> all_checks() {
  std::vector<Check> out;
  for (auto group : {pattern_checks(), biphoton_checks(), gaussian_checks(), exposure_checks(),
                     io_checks()})
    for (auto& c : group) out.push_back(std::move(c));
  return out;
}

/// Runs every check (or the quick subset). Exceptions count as failures.
inline std::vector<CheckResult> run_checks(const Context& ctx, bool quick_only,
                                           const std::function<void(const CheckResult&)>& on_result = {}) {
  std::vector<CheckResult> results;
  for (const auto& check : all_checks()) {
    if (quick_only && !check.quick) continue;
    CheckResult r;
    r.id = check.id;
    r.description = check.description;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto o = check.run(ctx);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace noonlith::validation
