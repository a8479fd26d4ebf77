#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/summation.hpp"

namespace noonlith {

enum class Normalization { UnitMax, UnitSum };

inline std::string_view to_string(Normalization n) {
  return n == Normalization::UnitMax ? "unit_max" : "unit_sum";
}

inline Normalization normalization_from_string(std::string_view s) {
  if (s == "unit_max" || s == "unit-max" || s == "max") return Normalization::UnitMax;
  if (s == "unit_sum" || s == "unit-sum" || s == "sum") return Normalization::UnitSum;
  throw InvalidArgument("unknown normalization '" + std::string(s) + "'");
}

/// What the axis coordinates of a pattern or map denote.
enum class AxisKind { DetectorIndex, Position };

/// Rescales non-negative `values` in place. Throws when every entry is zero
/// or an entry is negative or non-finite.
inline void normalize_in_place(std::vector<double>& values, Normalization norm) {
  double scale = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0)
      throw InvalidArgument("pattern values must be finite and non-negative");
  }
  if (norm == Normalization::UnitMax) {
    scale = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  } else {
    scale = compensated_sum(values);
  }
  if (!(scale > 0.0)) throw InvalidArgument("cannot normalize an all-zero pattern");
  for (double& v : values) v /= scale;
}

/// Detection probability along one axis of detectors.
struct Pattern1D {
  std::vector<double> axis;    // detector index s or position x
  std::vector<double> values;
  Normalization normalization = Normalization::UnitMax;
  AxisKind axis_kind = AxisKind::DetectorIndex;

  std::size_t size() const { return values.size(); }
};

/// Joint detection probability P(s,t), stored row-major with the first
/// index running over s.
struct CoincidenceMap {
  std::vector<double> axis;
  std::vector<double> values;
  Normalization normalization = Normalization::UnitMax;
  AxisKind axis_kind = AxisKind::DetectorIndex;

  CoincidenceMap() = default;
  CoincidenceMap(std::vector<double> axis_values, Normalization norm,
                 AxisKind kind = AxisKind::DetectorIndex)
      : axis(std::move(axis_values)),
        values(axis.size() * axis.size(), 0.0),
        normalization(norm),
        axis_kind(kind) {}

  std::size_t size() const { return axis.size(); }
  double& at(std::size_t i, std::size_t j) { return values[i * axis.size() + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * axis.size() + j]; }

  std::vector<double> diagonal() const {
    std::vector<double> d(size());
    for (std::size_t i = 0; i < size(); ++i) d[i] = at(i, i);
    return d;
  }

  double max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  }

  /// Largest |P(s,t) - P(t,s)|.
  double asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
    return worst;
  }

  /// Fraction of total mass on s != t.
  double off_diagonal_fraction() const {
    CompensatedSum<double> total, diag;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        total.add(at(i, j));
        if (i == j) diag.add(at(i, j));
      }
    return 1.0 - diag.value() / total.value();
  }

  void normalize(Normalization norm) {
    normalize_in_place(values, norm);
    normalization = norm;
  }
};

/// sum |a - b| / sum |b| over two maps of the same shape.
inline double relative_l1_distance(const CoincidenceMap& a, const CoincidenceMap& b) {
  detail::require(a.values.size() == b.values.size(), "map shapes differ");
  CompensatedSum<double> diff, ref;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    diff.add(std::abs(a.values[i] - b.values[i]));
    ref.add(std::abs(b.values[i]));
  }
  return diff.value() / ref.value();
}

inline double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  detail::require(a.size() == b.size(), "lengths differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace noonlith
