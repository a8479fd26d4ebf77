#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "noonlith/errors.hpp"
#include "noonlith/geometry.hpp"
#include "noonlith/maps.hpp"

namespace noonlith {

/// Closed-form double-slit detection patterns on a detector grid.
namespace patterns {

enum class Model { Boto, Steuernagel };

inline std::string_view to_string(Model m) { return m == Model::Boto ? "boto" : "steuernagel"; }

inline Model model_from_string(std::string_view s) {
  if (s == "boto") return Model::Boto;
  if (s == "steuernagel") return Model::Steuernagel;
  throw InvalidArgument("unknown model '" + std::string(s) + "'");
}

/// Phase per detector index in the single-photon cosine, k d b / (2R).
inline double phase_step(const SlitGeometry& geom, const DetectorGrid& grid) {
  geom.validate();
  grid.validate();
  return geom.wavenumber * geom.separation * grid.detector_width /
         (2.0 * geom.screen_distance);
}

/// P(s) ∝ cos^2(theta s). The slit envelope is not applied.
inline Pattern1D single_photon_pattern(const SlitGeometry& geom, const DetectorGrid& grid,
                                       Normalization norm = Normalization::UnitMax) {
  const double theta = phase_step(geom, grid);
  Pattern1D out;
  out.axis = grid.indices();
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = std::cos(theta * grid.index_at(i));
    out.values[i] = c * c;
  }
  normalize_in_place(out.values, norm);
  out.normalization = norm;
  return out;
}

/// Photons that stay together: P(s,t) ∝ cos^2(2 theta s) δ_st.
inline CoincidenceMap boto_coincidence(const SlitGeometry& geom, const DetectorGrid& grid,
                                       Normalization norm = Normalization::UnitMax) {
  const double theta = phase_step(geom, grid);
  CoincidenceMap map(grid.indices(), norm);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = std::cos(2.0 * theta * grid.index_at(i));
    map.at(i, i) = c * c;
  }
  map.normalize(norm);
  return map;
}

/// Independently diffracting photons: P(s,t) ∝ cos^2(theta (s + t)).
inline CoincidenceMap steuernagel_coincidence(const SlitGeometry& geom, const DetectorGrid& grid,
                                              Normalization norm = Normalization::UnitMax) {
  const double theta = phase_step(geom, grid);
  CoincidenceMap map(grid.indices(), norm);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double c = std::cos(theta * (grid.index_at(i) + grid.index_at(j)));
      map.at(i, j) = c * c;
    }
  }
  map.normalize(norm);
  return map;
}

/// Relative exposure time: S for Boto, S^N for Steuernagel (S = pixel count).
inline double exposure_scaling_law(Model model, std::int64_t pixels, std::int64_t photons) {
  detail::require(pixels >= 1, "pixel count must be at least 1");
  detail::require(photons >= 1, "photon number must be at least 1");
  const double s = static_cast<double>(pixels);
  return model == Model::Boto ? s : std::pow(s, static_cast<double>(photons));
}

}  // namespace patterns
}  // namespace noonlith
