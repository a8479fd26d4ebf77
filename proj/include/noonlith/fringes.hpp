#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "noonlith/errors.hpp"

namespace noonlith {

/// Indices of local maxima on a sampled curve.
///
/// A point is a maximum when it is strictly greater than both neighbours.
/// A plateau (neighbours equal within `tol`) bounded by strictly lower
/// values counts once, at its leftmost point. End points have a single
/// neighbour and are never reported.
inline std::vector<std::size_t> local_maxima(std::span<const double> v, double tol = 1e-12) {
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  if (n < 3) return out;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (v[i] - v[i - 1] > tol) {
      std::size_t j = i;
      while (j + 1 < n && std::abs(v[j + 1] - v[i]) <= tol) ++j;
      if (j + 1 < n && v[i] - v[j + 1] > tol) out.push_back(i);
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

inline std::size_t count_maxima(std::span<const double> v, double tol = 1e-12) {
  return local_maxima(v, tol).size();
}

/// Peak positions found from a sign change (+ to -) of the centred finite
/// difference, refined by a parabola through the three samples around the
/// crossing. Suitable for fine grids (hundreds of samples per fringe).
inline std::vector<double> peak_positions(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size(), "x and y must have equal length");
  std::vector<double> peaks;
  const std::size_t n = y.size();
  if (n < 5) return peaks;
  auto slope = [&](std::size_t i) { return y[i + 1] - y[i - 1]; };
  for (std::size_t i = 1; i + 2 < n; ++i) {
    const double s0 = slope(i);
    const double s1 = slope(i + 1);
    if (s0 > 0.0 && s1 <= 0.0) {
      const std::size_t c = (y[i] >= y[i + 1]) ? i : i + 1;
      const double denom = y[c - 1] - 2.0 * y[c] + y[c + 1];
      double offset = 0.0;
      if (denom < 0.0) offset = 0.5 * (y[c - 1] - y[c + 1]) / denom;
      const double h = x[c + 1] - x[c];
      peaks.push_back(x[c] + offset * h);
    }
  }
  return peaks;
}

/// Median gap between adjacent peaks, or nullopt for fewer than two peaks.
inline std::optional<double> median_peak_spacing(std::span<const double> x,
                                                 std::span<const double> y) {
  const auto peaks = peak_positions(x, y);
  if (peaks.size() < 2) return std::nullopt;
  std::vector<double> gaps;
  gaps.reserve(peaks.size() - 1);
  for (std::size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i] - peaks[i - 1]);
  std::sort(gaps.begin(), gaps.end());
  const std::size_t m = gaps.size() / 2;
  return gaps.size() % 2 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
}

/// Smallest x > 0 where a curve peaked at x = 0 first falls to `level`
/// (linear interpolation between samples). Assumes x ascending.
inline std::optional<double> half_width_at_level(std::span<const double> x,
                                                 std::span<const double> y, double level) {
  detail::require(x.size() == y.size(), "x and y must have equal length");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] < 0.0) continue;
    if (y[i - 1] >= level && y[i] < level) {
      const double t = (y[i - 1] - level) / (y[i - 1] - y[i]);
      return x[i - 1] + t * (x[i] - x[i - 1]);
    }
  }
  return std::nullopt;
}

}  // namespace noonlith
