#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/maps.hpp"

namespace noonlith::gaussian {

using std::numbers::pi;

/// Two Gaussian beams crossing at the origin at half-angle `beam_half_angle`
/// to the z axis, waists a distance L before the crossing point, carrying an
/// N-photon NOON state. The detector line is y = z = 0.
///
/// Note: `beam_half_angle` is the beam geometry angle, not the slit-state
/// mixing angle of `biphoton::BiphotonSlitState`.
struct Setup {
  double waist = 1e-3;          // w
  double distance = 0.1;        // L
  double beam_half_angle = pi / 6.0;
  double wavelength = 1e-6;     // lambda
  int photons = 2;              // N

  const Setup& validate() const {
    detail::require(waist > 0.0, "beam waist w must be positive");
    detail::require(distance > 0.0, "waist distance L must be positive");
    detail::require(wavelength > 0.0, "wavelength must be positive");
    detail::require(beam_half_angle > 0.0 && beam_half_angle < 0.5 * pi,
                    "beam half-angle must lie in (0, pi/2)");
    detail::require(photons >= 1, "photon number N must be at least 1");
    return *this;
  }

  Setup with_photons(int n) const {
    Setup s = *this;
    s.photons = n;
    return s;
  }

  Setup with_waist(double w) const {
    Setup s = *this;
    s.waist = w;
    return s;
  }

  double wavenumber() const { return 2.0 * pi / wavelength; }

  /// beta = lambda^2 L^2 / (pi^2 w^4).
  double beta() const {
    const double w2 = waist * waist;
    return wavelength * wavelength * distance * distance / (pi * pi * w2 * w2);
  }

  /// 1/q at the waist (rho = infinity): -i lambda / (pi w^2).
  std::complex<double> inverse_q() const {
    return {0.0, -wavelength / (pi * waist * waist)};
  }

  /// Set when |x sin(alpha)| exceeds L/10, where the expansion in
  /// x sin(alpha) / L is no longer trustworthy.
  bool outside_validity(double x) const {
    return std::abs(x * std::sin(beam_half_angle)) > 0.1 * distance;
  }
};

enum class CubicTerm { Include, Drop };

enum class Model { Noon, Delta };

inline std::string_view to_string(Model m) { return m == Model::Noon ? "noon" : "delta"; }

inline Model model_from_string(std::string_view s) {
  if (s == "noon") return Model::Noon;
  if (s == "delta") return Model::Delta;
  throw InvalidArgument("unknown gaussian model '" + std::string(s) + "'");
}

/// Envelope coefficient a in exp(-a x^2) of the all-at-one-point NOON
/// probability: k cos^2(alpha) sqrt(beta) N / (L (1 + 1/beta)).
inline double noon_envelope_coefficient(const Setup& s) {
  s.validate();
  const double c = std::cos(s.beam_half_angle);
  const double beta = s.beta();
  return s.wavenumber() * c * c * std::sqrt(beta) * s.photons / (s.distance * (1.0 + 1.0 / beta));
}

/// Coefficient of x^3 in the NOON cosine argument:
/// k cos^2(alpha) sin(alpha) N / (2 L^2 (1 + 1/beta)).
inline double noon_cubic_coefficient(const Setup& s) {
  s.validate();
  const double c = std::cos(s.beam_half_angle);
  return s.wavenumber() * c * c * std::sin(s.beam_half_angle) * s.photons /
         (2.0 * s.distance * s.distance * (1.0 + 1.0 / s.beta()));
}

/// Envelope coefficient of the photons-born-together state:
/// k N^2 sqrt(beta) cos^2(alpha) / (L (beta + N^2)).
inline double delta_envelope_coefficient(const Setup& s) {
  s.validate();
  const double c = std::cos(s.beam_half_angle);
  const double beta = s.beta();
  const double n2 = static_cast<double>(s.photons) * s.photons;
  return s.wavenumber() * n2 * std::sqrt(beta) * c * c / (s.distance * (beta + n2));
}

/// Linear phase rate of every cosine factor, k sin(alpha) N.
inline double fringe_wavenumber(const Setup& s) {
  s.validate();
  return s.wavenumber() * std::sin(s.beam_half_angle) * s.photons;
}

/// Expected spacing of adjacent fringes, lambda / (2 N sin(alpha)).
inline double expected_fringe_spacing(const Setup& s) {
  return pi / fringe_wavenumber(s);
}

/// Probability that all N photons land at x, normalized to 1 at x = 0.
inline double noon_same_point_probability(const Setup& s, double x,
                                          CubicTerm cubic = CubicTerm::Include) {
  const double a = noon_envelope_coefficient(s);
  double arg = fringe_wavenumber(s) * x;
  if (cubic == CubicTerm::Include) arg -= noon_cubic_coefficient(s) * x * x * x;
  const double c = std::cos(arg);
  return std::exp(-a * x * x) * c * c;
}

/// Same-point probability for the state whose photons are created at a
/// single point, normalized to 1 at x = 0.
inline double delta_state_probability(const Setup& s, double x) {
  const double a = delta_envelope_coefficient(s);
  const double c = std::cos(fringe_wavenumber(s) * x);
  return std::exp(-a * x * x) * c * c;
}

/// Two-photon NOON coincidence at (x1, x2), cubic term dropped:
/// exp(-k cos^2 sqrt(beta) (x1^2 + x2^2) / (L (1 + 1/beta))) cos^2(k sin (x1 + x2)).
/// Uses N = 2 regardless of `s.photons`.
inline double noon_pair_coincidence(const Setup& s, double x1, double x2) {
  const Setup two = s.with_photons(2);
  const double a = noon_envelope_coefficient(two) / 2.0;
  const double c = std::cos(fringe_wavenumber(two) * 0.5 * (x1 + x2));
  return std::exp(-a * (x1 * x1 + x2 * x2)) * c * c;
}

/// Photons-born-together coincidence; depends only on x1 + x2:
/// exp(-k cos^2 sqrt(beta) (x1 + x2)^2 / (L (beta + 4))) cos^2(k sin (x1 + x2)).
inline double delta_pair_coincidence(const Setup& s, double x1, double x2) {
  s.validate();
  const double c2 = std::pow(std::cos(s.beam_half_angle), 2);
  const double beta = s.beta();
  const double a = s.wavenumber() * c2 * std::sqrt(beta) / (s.distance * (beta + 4.0));
  const double sum = x1 + x2;
  const double c = std::cos(s.wavenumber() * std::sin(s.beam_half_angle) * sum);
  return std::exp(-a * sum * sum) * c * c;
}

/// Sampled same-point probability with its Gaussian envelope.
struct FringeScan {
  std::vector<double> positions;
  std::vector<double> values;
  std::vector<double> envelope;
  bool validity_warning = false;
};

inline FringeScan scan(Model model, const Setup& s, std::span<const double> positions,
                       CubicTerm cubic = CubicTerm::Include) {
  s.validate();
  FringeScan out;
  out.positions.assign(positions.begin(), positions.end());
  out.values.reserve(positions.size());
  out.envelope.reserve(positions.size());
  const double a = model == Model::Noon ? noon_envelope_coefficient(s)
                                        : delta_envelope_coefficient(s);
  for (double x : positions) {
    out.envelope.push_back(std::exp(-a * x * x));
    out.values.push_back(model == Model::Noon ? noon_same_point_probability(s, x, cubic)
                                              : delta_state_probability(s, x));
    if (s.outside_validity(x)) out.validity_warning = true;
  }
  return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  detail::require(n >= 2, "need at least two sample points");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

/// Pairwise coincidence map on a symmetric position axis.
inline CoincidenceMap pair_map(Model model, const Setup& s, std::span<const double> axis,
                               Normalization norm = Normalization::UnitMax) {
  CoincidenceMap map(std::vector<double>(axis.begin(), axis.end()), norm, AxisKind::Position);
  for (std::size_t i = 0; i < axis.size(); ++i)
    for (std::size_t j = 0; j < axis.size(); ++j)
      map.at(i, j) = model == Model::Noon ? noon_pair_coincidence(s, axis[i], axis[j])
                                          : delta_pair_coincidence(s, axis[i], axis[j]);
  map.normalize(norm);
  return map;
}

/// Where the cosine outruns the envelope: below x_low via the linear term,
/// above x_high via the cubic term.
struct VisibilityConditions {
  double x_low = 0.0;
  double x_high = 0.0;
  bool alpha_above_quarter_pi = false;
  /// x_low >= x_high, so every x >= 0 satisfies one condition.
  bool always_satisfied = false;

  bool satisfied(double x) const { return x < x_low || x > x_high; }
};

inline VisibilityConditions visibility_conditions(const Setup& s) {
  s.validate();
  const double sn = std::sin(s.beam_half_angle), cs = std::cos(s.beam_half_angle);
  const double area = pi * s.waist * s.waist / s.wavelength;
  VisibilityConditions v;
  v.x_low = (1.0 + 1.0 / s.beta()) * sn / (cs * cs) * area;
  v.x_high = 2.0 * area / sn;
  v.alpha_above_quarter_pi = s.beam_half_angle > 0.25 * pi;
  v.always_satisfied = v.x_low >= v.x_high;
  return v;
}

/// Prefactors of the cosine argument written in units of x / lambda:
///   2 pi sin(alpha) N (x/lambda) - [2 pi cos^2 sin N / (2 (1+1/beta) L^2/lambda^2)] (x/lambda)^3.
struct CubicTermMagnitude {
  double linear_coeff = 0.0;
  double cubic_coeff = 0.0;
  /// linear_coeff / cubic_coeff; independent of x.
  double ratio = 0.0;
  /// Ratio of the two terms themselves at x: ratio * (lambda / x)^2.
  double term_ratio = 0.0;
};

inline CubicTermMagnitude cubic_term_magnitude(const Setup& s, double x) {
  s.validate();
  const double sn = std::sin(s.beam_half_angle), cs = std::cos(s.beam_half_angle);
  const double l_over_lambda = s.distance / s.wavelength;
  CubicTermMagnitude m;
  m.linear_coeff = 2.0 * pi * sn * s.photons;
  m.cubic_coeff = 2.0 * pi * cs * cs * sn * s.photons /
                  (2.0 * (1.0 + 1.0 / s.beta()) * l_over_lambda * l_over_lambda);
  m.ratio = m.linear_coeff / m.cubic_coeff;
  const double u = x / s.wavelength;
  m.term_ratio = u == 0.0 ? std::numeric_limits<double>::infinity() : m.ratio / (u * u);
  return m;
}

}  // namespace noonlith::gaussian
