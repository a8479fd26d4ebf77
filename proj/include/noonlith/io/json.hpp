#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "noonlith/exposure.hpp"
#include "noonlith/gaussian_noon.hpp"
#include "noonlith/maps.hpp"

namespace noonlith::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view schema_version = "1";

/// Top-level document: {"schema_version", "kind", "data", "meta"}. Anything
/// that varies between identical runs (timestamps) belongs in `meta` only.
inline Json document(std::string_view kind, Json data, Json meta = Json::object()) {
  Json doc;
  doc["schema_version"] = schema_version;
  doc["kind"] = kind;
  doc["data"] = std::move(data);
  doc["meta"] = std::move(meta);
  return doc;
}

inline std::string_view axis_name(AxisKind k) {
  return k == AxisKind::DetectorIndex ? "detector_index" : "position";
}

inline Json to_json(const Pattern1D& p) {
  return Json{{"axis_kind", axis_name(p.axis_kind)},
              {"normalization", to_string(p.normalization)},
              {"axis", p.axis},
              {"values", p.values}};
}

inline Json to_json(const CoincidenceMap& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<double> row(m.values.begin() + static_cast<std::ptrdiff_t>(i * m.size()),
                            m.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.size()));
    rows.push_back(std::move(row));
  }
  return Json{{"axis_kind", axis_name(m.axis_kind)},
              {"normalization", to_string(m.normalization)},
              {"axis", m.axis},
              {"p", std::move(rows)}};
}

inline Json to_json(const gaussian::Setup& s) {
  return Json{{"waist_m", s.waist},
              {"distance_m", s.distance},
              {"beam_half_angle_rad", s.beam_half_angle},
              {"wavelength_m", s.wavelength},
              {"photons", s.photons},
              {"beta", s.beta()}};
}

inline Json to_json(const gaussian::FringeScan& s) {
  return Json{{"x", s.positions},
              {"p", s.values},
              {"envelope", s.envelope},
              {"validity_warning", s.validity_warning}};
}

inline Json to_json(const exposure::Config& c) {
  return Json{{"model", patterns::to_string(c.model)},
              {"pixels", c.pixels},
              {"photons", c.photons},
              {"target_events", c.target_events},
              {"weighting", c.weighting.kind == exposure::Weighting::Kind::Uniform ? "uniform"
                                                                                 : "fringe"},
              {"theta", c.weighting.theta},
              {"node_threshold", c.node_threshold},
              {"seed", c.seed},
              {"trials", c.trials}};
}

inline Json to_json(const exposure::Result& r) {
  return Json{{"mean_bunches", r.mean_bunches},
              {"std_error", r.std_error},
              {"per_trial", r.per_trial},
              {"pixel_events", r.pixel_events}};
}

}  // namespace noonlith::io
