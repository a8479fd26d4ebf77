#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

#include "noonlith/errors.hpp"

namespace noonlith::io {

/// Locale-independent parse of a whole string as a double.
inline double parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("not a number: '" + std::string(s) + "'");
  return v;
}

/// Length with optional unit suffix (nm, um, mm, cm, m); bare numbers are
/// meters. Returns meters.
inline double parse_length(std::string_view s) {
  struct Unit {
    std::string_view suffix;
    double scale;
  };
  static constexpr Unit units[] = {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
  for (const auto& u : units) {
    if (s.size() > u.suffix.size() && s.ends_with(u.suffix)) {
      const auto number = s.substr(0, s.size() - u.suffix.size());
      const char last = number.back();
      if ((last >= '0' && last <= '9') || last == '.')
        return parse_double(number) * u.scale;
    }
  }
  return parse_double(s);
}

inline double degrees_to_radians(double deg) { return deg * 3.14159265358979323846 / 180.0; }

}  // namespace noonlith::io
