#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "noonlith/errors.hpp"

namespace noonlith {

/// Double-slit screen geometry. Lengths in meters, wavenumber in rad/m.
///
/// `slit_width == 0` denotes ideal delta slits. The closed-form pattern
/// models never apply a slit envelope; only the numerical propagation
/// oracle integrates over a finite width.
struct SlitGeometry {
  double separation = 1e-3;        // d
  double slit_width = 0.0;         // a
  double screen_distance = 1.0;    // R
  double wavenumber = 2.0 * std::numbers::pi / 1e-6;  // k

  static SlitGeometry from_wavelength(double separation, double slit_width,
                                      double screen_distance, double wavelength) {
    detail::require(wavelength > 0.0, "wavelength must be positive");
    return SlitGeometry{separation, slit_width, screen_distance,
                        2.0 * std::numbers::pi / wavelength}
        .validated();
  }

  double wavelength() const { return 2.0 * std::numbers::pi / wavenumber; }

  /// Single-photon fringe spacing on the screen, lambda * R / d.
  double fringe_spacing() const { return wavelength() * screen_distance / separation; }

  /// Set when R < 100 d; the paraxial closed forms lose accuracy there.
  bool paraxial_warning() const { return screen_distance < 100.0 * separation; }

  const SlitGeometry& validate() const {
    detail::require(separation > 0.0, "slit separation d must be positive");
    detail::require(screen_distance > 0.0, "screen distance R must be positive");
    detail::require(wavenumber > 0.0, "wavenumber k must be positive");
    detail::require(slit_width >= 0.0, "slit width a must be non-negative");
    detail::require(slit_width < separation, "slit width a must be smaller than d");
    return *this;
  }

  SlitGeometry validated() const {
    validate();
    return *this;
  }
};

/// S+1 detectors of width b centred at x = s*b, s in {-S/2, ..., S/2}.
struct DetectorGrid {
  int half_span = 50;   // S/2
  double detector_width = 1e-5;  // b

  static DetectorGrid with_detectors(int count, double detector_width) {
    detail::require(count >= 1 && count % 2 == 1,
                    "detector count S+1 must be odd (S even)");
    return DetectorGrid{(count - 1) / 2, detector_width}.validated();
  }

  int span() const { return 2 * half_span; }  // S
  std::size_t size() const { return static_cast<std::size_t>(span() + 1); }
  int index_at(std::size_t i) const { return static_cast<int>(i) - half_span; }
  double position(int s) const { return s * detector_width; }

  std::vector<double> indices() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = index_at(i);
    return out;
  }

  std::vector<double> positions() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = position(index_at(i));
    return out;
  }

  const DetectorGrid& validate() const {
    detail::require(half_span >= 0, "S must be a non-negative even integer");
    detail::require(detector_width > 0.0, "detector width b must be positive");
    return *this;
  }

  DetectorGrid validated() const {
    validate();
    return *this;
  }
};

/// Detector width b for which S+1 detectors span `fringes` single-photon
/// fringes, i.e. k d b (S+1) / (2R) = fringes * pi.
inline double detector_width_for_fringes(const SlitGeometry& geom, double fringes,
                                         int detectors) {
  geom.validate();
  detail::require(fringes > 0.0, "fringe count must be positive");
  detail::require(detectors >= 1, "need at least one detector");
  return 2.0 * geom.screen_distance * fringes * std::numbers::pi /
         (detectors * geom.wavenumber * geom.separation);
}

}  // namespace noonlith
