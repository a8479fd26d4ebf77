#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/gaussian_noon.hpp"
#include "noonlith/io/units.hpp"
#include "noonlith/maps.hpp"

namespace noonlith::io {

/// Shortest decimal form that reads back to the identical double, with '.'
/// as separator regardless of locale.
inline void append_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

inline std::string format_number(double v) {
  std::string s;
  append_number(s, v);
  return s;
}

/// Maps: header `s,t,p` (detector indices) or `x1,x2,p` (positions), one
/// row per (s, t) with s the outer index.
inline std::string map_to_csv(const CoincidenceMap& map) {
  std::string out = map.axis_kind == AxisKind::DetectorIndex ? "s,t,p\n" : "x1,x2,p\n";
  out.reserve(map.values.size() * 24);
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j) {
      append_number(out, map.axis[i]);
      out += ',';
      append_number(out, map.axis[j]);
      out += ',';
      append_number(out, map.at(i, j));
      out += '\n';
    }
  return out;
}

/// One-dimensional patterns: header `s,p` or `x,p`.
inline std::string pattern_to_csv(const Pattern1D& p) {
  std::string out = p.axis_kind == AxisKind::DetectorIndex ? "s,p\n" : "x,p\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    append_number(out, p.axis[i]);
    out += ',';
    append_number(out, p.values[i]);
    out += '\n';
  }
  return out;
}

/// Scans: header `x,p,envelope`.
inline std::string scan_to_csv(const gaussian::FringeScan& scan) {
  std::string out = "x,p,envelope\n";
  for (std::size_t i = 0; i < scan.positions.size(); ++i) {
    append_number(out, scan.positions[i]);
    out += ',';
    append_number(out, scan.values[i]);
    out += ',';
    append_number(out, scan.envelope[i]);
    out += '\n';
  }
  return out;
}

namespace detail_csv {

inline std::vector<std::vector<double>> parse_rows(std::string_view text, std::string_view header_a,
                                                   std::string_view header_b, std::size_t columns,
                                                   std::string* header_out) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != header_a && line != header_b)
        throw InvalidArgument("unexpected CSV header '" + std::string(line) + "'");
      if (header_out) *header_out = std::string(line);
      header = false;
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      row.push_back(parse_double(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (row.size() != columns) throw InvalidArgument("CSV row has wrong column count");
    rows.push_back(std::move(row));
  }
  if (header) throw InvalidArgument("empty CSV");
  return rows;
}

}  // namespace detail_csv

/// Inverse of map_to_csv. Normalization is not stored in CSV; the caller
/// supplies it.
inline CoincidenceMap map_from_csv(std::string_view text,
                                   Normalization norm = Normalization::UnitMax) {
  std::string header;
  const auto rows = detail_csv::parse_rows(text, "s,t,p", "x1,x2,p", 3, &header);
  std::size_t n = 0;
  while (n * n < rows.size()) ++n;
  if (n * n != rows.size()) throw InvalidArgument("map CSV is not square");
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) axis[i] = rows[i * n][0];
  CoincidenceMap map(std::move(axis), norm,
                     header == "s,t,p" ? AxisKind::DetectorIndex : AxisKind::Position);
  for (std::size_t k = 0; k < rows.size(); ++k) map.values[k] = rows[k][2];
  return map;
}

inline gaussian::FringeScan scan_from_csv(std::string_view text) {
  const auto rows = detail_csv::parse_rows(text, "x,p,envelope", "x,p,envelope", 3, nullptr);
  gaussian::FringeScan scan;
  for (const auto& r : rows) {
    scan.positions.push_back(r[0]);
    scan.values.push_back(r[1]);
    scan.envelope.push_back(r[2]);
  }
  return scan;
}

}  // namespace noonlith::io
