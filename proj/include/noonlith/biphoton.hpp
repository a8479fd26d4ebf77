#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>

#include "noonlith/errors.hpp"
#include "noonlith/geometry.hpp"
#include "noonlith/maps.hpp"
#include "noonlith/pattern_models.hpp"
#include "noonlith/quadrature.hpp"

namespace noonlith::biphoton {

using complex = std::complex<double>;
using std::numbers::pi;

/// One-dimensional paraxial free-space kernel
///   sqrt(-i / (lambda dz)) exp(i pi (x_out - x_in)^2 / (lambda dz)).
/// dz must be positive; the dz -> 0 delta limit is never taken numerically.
inline complex fresnel_propagator(double x_out, double x_in, double dz, double k) {
  detail::require(dz > 0.0, "propagation distance must be positive");
  detail::require(k > 0.0, "wavenumber must be positive");
  const double lambda = 2.0 * pi / k;
  const double scale = 1.0 / std::sqrt(lambda * dz);
  const double dx = x_out - x_in;
  const double phase = pi * dx * dx / (lambda * dz) - 0.25 * pi;
  return std::polar(scale, phase);
}

/// Amplitudes c_ij for photon 1 through slit i and photon 2 through slit j
/// (slit 1 at +d/2, slit 2 at -d/2).
struct SlitAmplitudes {
  complex c11, c12, c21, c22;
};

/// Two-photon state at the slits, restricted to the exchange-symmetric
/// subspace c11 = c22, c12 = c21.
///
/// Note: `alpha` here is the mixing angle of the slit state, unrelated to
/// the beam half-angle of `gaussian::Setup`.
class BiphotonSlitState {
 public:
  /// c11 = c22 = e^{i phi} sin(alpha/2), c12 = c21 = cos(alpha/2).
  static BiphotonSlitState from_parameters(double alpha, double phi) {
    detail::require(std::isfinite(alpha) && std::isfinite(phi), "alpha and phi must be finite");
    const complex same = std::polar(std::sin(0.5 * alpha), phi);
    const complex split(std::cos(0.5 * alpha), 0.0);
    return BiphotonSlitState({same, split, split, same});
  }

  /// Validates exchange symmetry relative to the largest amplitude; the
  /// amplitudes are stored as given (no rescaling or rephasing).
  static BiphotonSlitState from_raw(const SlitAmplitudes& c, double rel_tol = 1e-9) {
    const double scale = std::max({std::abs(c.c11), std::abs(c.c12), std::abs(c.c21),
                                   std::abs(c.c22)});
    detail::require(std::isfinite(scale), "slit amplitudes must be finite");
    detail::require(scale > 0.0, "slit amplitudes are all zero");
    const double d_same = std::abs(c.c11 - c.c22) / scale;
    const double d_split = std::abs(c.c12 - c.c21) / scale;
    if (d_same > rel_tol || d_split > rel_tol) {
      throw SymmetryError("slit amplitudes are not exchange symmetric: |c11-c22|/max = " +
                          std::to_string(d_same) + ", |c12-c21|/max = " +
                          std::to_string(d_split));
    }
    return BiphotonSlitState(c);
  }

  const SlitAmplitudes& amplitudes() const { return amps_; }

  /// Renormalized so |c12|^2 + |c11|^2 = 1 and rotated so c12 is real.
  /// The rotation is the smallest one that makes c12 real, so a negative
  /// real c12 keeps its sign. When c12 vanishes, c11 is made real positive.
  SlitAmplitudes normalized() const {
    const double norm = std::sqrt(std::norm(amps_.c11) + std::norm(amps_.c12));
    double chi = 0.0;
    if (amps_.c12 != complex(0.0, 0.0)) {
      chi = std::arg(amps_.c12);
      if (chi > 0.5 * pi) chi -= pi;
      if (chi <= -0.5 * pi) chi += pi;
    } else {
      chi = std::arg(amps_.c11);
    }
    const complex rot = std::polar(1.0 / norm, -chi);
    complex split = amps_.c12 * rot;
    split = complex(split.real(), 0.0);
    const complex same = amps_.c11 * rot;
    return {same, split, split, same};
  }

  /// Mixing angle in [0, 2pi).
  double alpha() const {
    const auto n = normalized();
    return 2.0 * std::atan2(std::abs(n.c11), n.c12.real());
  }

  /// Relative phase of c11 against c12, in [0, 2pi).
  double phi() const {
    const auto n = normalized();
    double p = std::arg(n.c11);
    if (p < 0.0) p += 2.0 * pi;
    if (p >= 2.0 * pi) p -= 2.0 * pi;
    return p;
  }

 private:
  explicit BiphotonSlitState(const SlitAmplitudes& c) : amps_(c) {}
  SlitAmplitudes amps_;
};

/// Complex-valued profile in transverse momenta (k1, k2).
using MomentumFunction = std::function<complex(double, double)>;

/// Integration support in sum/difference momenta K = k1 + k2 and
/// D = k1 - k2. Profiles are assumed negligible outside
/// |K| <= sum_half_width, |D| <= diff_half_width.
struct MomentumSupport {
  double sum_half_width = 0.0;
  double diff_half_width = 0.0;
  int sum_panels = 8;
  int diff_panels = 8;
};

/// Gaussian pump depending on (k1 + k2)^2: exp(-(k1+k2)^2 w_p^2 / 4).
inline MomentumFunction gaussian_pump(double pump_waist) {
  detail::require(pump_waist > 0.0, "pump waist must be positive");
  return [w2 = pump_waist * pump_waist](double k1, double k2) {
    const double s = k1 + k2;
    return complex(std::exp(-0.25 * s * s * w2), 0.0);
  };
}

/// Collinear type-I phase matching sinc(L_c (k1-k2)^2 / (4k)).
inline MomentumFunction sinc_phase_matching(double crystal_length, double wavenumber) {
  detail::require(crystal_length > 0.0, "crystal length must be positive");
  detail::require(wavenumber > 0.0, "wavenumber must be positive");
  return [c = crystal_length / (4.0 * wavenumber)](double k1, double k2) {
    const double d = k1 - k2;
    const double arg = c * d * d;
    return complex(arg == 0.0 ? 1.0 : std::sin(arg) / arg, 0.0);
  };
}

/// Gaussian stand-in for phase matching, exp(-(k1-k2)^2 sigma^2 / 4). In
/// position space the pair is correlated over |x1 - x2| ~ 2 sigma, so a
/// small sigma approaches the photons-born-together limit.
inline MomentumFunction gaussian_phase_matching(double correlation_width) {
  detail::require(correlation_width > 0.0, "correlation width must be positive");
  return [s2 = correlation_width * correlation_width](double k1, double k2) {
    const double d = k1 - k2;
    return complex(std::exp(-0.25 * d * d * s2), 0.0);
  };
}

/// Pump and phase-matching profiles with their integration support.
struct PumpPhaseMatchProfiles {
  MomentumFunction pump;
  MomentumFunction phasematch;
  MomentumSupport support;

  /// Defaults: Gaussian pump in (k1+k2), sinc phase matching in (k1-k2).
  /// The sinc support is truncated after about 40 lobes.
  static PumpPhaseMatchProfiles standard(double pump_waist, double crystal_length,
                                         double wavenumber) {
    PumpPhaseMatchProfiles p;
    p.pump = gaussian_pump(pump_waist);
    p.phasematch = sinc_phase_matching(crystal_length, wavenumber);
    p.support.sum_half_width = 12.5 / pump_waist;
    p.support.diff_half_width = std::sqrt(160.0 * pi * wavenumber / crystal_length);
    p.support.diff_panels = 32;
    return p;
  }

  /// Gaussian pump and Gaussian phase-matching stand-in.
  static PumpPhaseMatchProfiles gaussian(double pump_waist, double correlation_width) {
    PumpPhaseMatchProfiles p;
    p.pump = gaussian_pump(pump_waist);
    p.phasematch = gaussian_phase_matching(correlation_width);
    p.support.sum_half_width = 12.5 / pump_waist;
    p.support.diff_half_width = 12.5 / correlation_width;
    return p;
  }

  void validate() const {
    detail::require(static_cast<bool>(pump) && static_cast<bool>(phasematch),
                    "pump and phase-matching functions must be set");
    detail::require(support.sum_half_width > 0.0 && support.diff_half_width > 0.0,
                    "momentum support must be a non-empty box");
    detail::require(support.sum_panels >= 1 && support.diff_panels >= 1,
                    "support panel counts must be positive");
  }

  /// Product E_p * Xi at (k1, k2); throws if it is not finite.
  complex joint(double k1, double k2) const {
    const complex v = pump(k1, k2) * phasematch(k1, k2);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("profile is not finite on its support box");
    return v;
  }
};

/// Integrates g(k1, k2) E_p Xi dk1 dk2 over the support box, in sum and
/// difference coordinates (Jacobian 1/2).
template <class Phase>
complex integrate_momentum(const PumpPhaseMatchProfiles& profiles, Phase&& phase,
                           const quadrature::Options& opt) {
  const auto& sup = profiles.support;
  auto integrand = [&](double sum, double diff) {
    const double k1 = 0.5 * (sum + diff), k2 = 0.5 * (sum - diff);
    return 0.5 * profiles.joint(k1, k2) * phase(k1, k2);
  };
  const quadrature::Box box{-sup.sum_half_width, sup.sum_half_width, -sup.diff_half_width,
                            sup.diff_half_width};
  auto r = quadrature::integrate_2d(integrand, box, opt, sup.sum_panels, sup.diff_panels);
  if (!r.converged) {
    throw ConvergenceError("momentum-space quadrature did not converge (error estimate " +
                           std::to_string(r.error) + ")");
  }
  return r.value;
}

/// Raw slit amplitudes for slits close to the crystal:
///   c_ij = ∫∫ E_p Xi exp(-i s_i k1 d/2) exp(-i s_j k2 d/2),
/// with s_1 = +1, s_2 = -1. Throws SymmetryError when the profiles are not
/// invariant under a joint sign flip of (k1, k2).
inline BiphotonSlitState slit_amplitudes(const PumpPhaseMatchProfiles& profiles,
                                         const SlitGeometry& geom,
                                         const quadrature::Options& opt = {},
                                         double symmetry_tol = 1e-9) {
  profiles.validate();
  geom.validate();
  const double h = 0.5 * geom.separation;
  auto amp = [&](double s1, double s2) {
    return integrate_momentum(
        profiles, [&](double k1, double k2) { return std::polar(1.0, -(s1 * k1 + s2 * k2) * h); },
        opt);
  };
  const SlitAmplitudes raw{amp(1, 1), amp(1, -1), amp(-1, 1), amp(-1, -1)};
  return BiphotonSlitState::from_raw(raw, symmetry_tol);
}

/// Two-photon amplitude at the screen for ideal (delta) slits:
///   psi(x1,x2) = sum_ij c_ij h(x1, ±d/2) h(x2, ±d/2).
class DetectionAmplitude {
 public:
  DetectionAmplitude(const SlitAmplitudes& amps, const SlitGeometry& geom, double distance)
      : amps_(amps), geom_(geom.validated()), distance_(distance) {
    detail::require(distance > 0.0, "slit-to-screen distance must be positive");
  }

  complex operator()(double x1, double x2) const {
    const double h = 0.5 * geom_.separation;
    const double k = geom_.wavenumber;
    const complex a1 = fresnel_propagator(x1, h, distance_, k);
    const complex b1 = fresnel_propagator(x1, -h, distance_, k);
    const complex a2 = fresnel_propagator(x2, h, distance_, k);
    const complex b2 = fresnel_propagator(x2, -h, distance_, k);
    return amps_.c11 * a1 * a2 + amps_.c12 * a1 * b2 + amps_.c21 * b1 * a2 + amps_.c22 * b1 * b2;
  }

  double probability(double x1, double x2) const { return std::norm((*this)(x1, x2)); }

  /// |psi|^2 at detector centres x = s b.
  CoincidenceMap sample(const DetectorGrid& grid,
                        Normalization norm = Normalization::UnitMax) const {
    grid.validate();
    CoincidenceMap map(grid.indices(), norm);
    const auto x = grid.positions();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) map.at(i, j) = probability(x[i], x[j]);
    map.normalize(norm);
    return map;
  }

  const SlitAmplitudes& amplitudes() const { return amps_; }
  const SlitGeometry& geometry() const { return geom_; }
  double distance() const { return distance_; }

 private:
  SlitAmplitudes amps_;
  SlitGeometry geom_;
  double distance_;
};

inline DetectionAmplitude detection_amplitude(const BiphotonSlitState& state,
                                              const SlitGeometry& geom, double distance) {
  return DetectionAmplitude(state.amplitudes(), geom, distance);
}

inline DetectionAmplitude detection_amplitude(const BiphotonSlitState& state,
                                              const SlitGeometry& geom) {
  return detection_amplitude(state, geom, geom.screen_distance);
}

/// NOON state (alpha = pi) sampled on the grid.
inline CoincidenceMap noon_map(const SlitGeometry& geom, const DetectorGrid& grid,
                               Normalization norm = Normalization::UnitMax) {
  return detection_amplitude(BiphotonSlitState::from_parameters(pi, 0.0), geom).sample(grid, norm);
}

enum class Panel { A, B, C, D, E, F };

struct PanelParameters {
  double alpha;
  double phi;
};

inline PanelParameters panel_parameters(Panel p) {
  switch (p) {
    case Panel::A: return {pi, 0.0};
    case Panel::B: return {1.5 * pi, 0.0};
    case Panel::C: return {0.5 * pi, 0.5 * pi};
    case Panel::D: return {0.0, 0.0};
    case Panel::E: return {0.5 * pi, 0.0};
    case Panel::F: return {0.25 * pi, 0.0};
  }
  throw InvalidArgument("unknown panel");
}

inline Panel panel_from_string(std::string_view s) {
  if (s.size() == 1) {
    const char c = static_cast<char>(s[0] | 0x20);
    if (c >= 'a' && c <= 'f') return static_cast<Panel>(c - 'a');
  }
  throw InvalidArgument("panel must be one of a-f, got '" + std::string(s) + "'");
}

inline char panel_letter(Panel p) { return static_cast<char>('a' + static_cast<int>(p)); }

inline constexpr std::array<Panel, 6> all_panels{Panel::A, Panel::B, Panel::C,
                                                 Panel::D, Panel::E, Panel::F};

/// Coincidence map for one of the six reference (alpha, phi) states. The
/// grid must cover at least four single-photon fringes.
inline CoincidenceMap figure_a1_panel(Panel panel, const SlitGeometry& geom,
                                      const DetectorGrid& grid,
                                      Normalization norm = Normalization::UnitMax) {
  const double fringes = patterns::phase_step(geom, grid) * static_cast<double>(grid.size()) / pi;
  detail::require(fringes >= 4.0 - 1e-9, "grid must span at least four single-photon fringes");
  const auto [alpha, phi] = panel_parameters(panel);
  return detection_amplitude(BiphotonSlitState::from_parameters(alpha, phi), geom)
      .sample(grid, norm);
}

}  // namespace noonlith::biphoton
