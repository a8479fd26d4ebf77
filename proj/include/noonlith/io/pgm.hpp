#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/maps.hpp"

namespace noonlith::io {

/// 16-bit binary PGM (P5, maxval 65535, big-endian samples).
///
/// Orientation: column = s (first index) increasing left to right, row = t
/// (second index) increasing bottom to top, so the s = t diagonal runs from
/// lower left to upper right. Pixel value = round(65535 * p / max p); lighter
/// means a higher coincidence rate. The same notes are written as comments
/// in the file header.
inline std::string map_to_pgm(const CoincidenceMap& map) {
  const std::size_t n = map.size();
  detail::require(n > 0, "cannot write an empty map");
  const double peak = map.max_value();
  detail::require(peak > 0.0, "cannot scale an all-zero map");
  std::string out = "P5\n";
  out += "# columns: s ascending left to right; rows: t ascending bottom to top\n";
  out += "# value = round(65535 * p / max p); lighter = higher coincidence rate\n";
  out += std::to_string(n) + " " + std::to_string(n) + "\n65535\n";
  out.reserve(out.size() + 2 * n * n);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t j = n - 1 - row;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = static_cast<std::uint16_t>(std::lround(65535.0 * map.at(i, j) / peak));
      out += static_cast<char>(v >> 8);
      out += static_cast<char>(v & 0xff);
    }
  }
  return out;
}

/// One-row image of a 1-D pattern, same scaling.
inline std::string pattern_to_pgm(const Pattern1D& p) {
  detail::require(!p.values.empty(), "cannot write an empty pattern");
  const double peak = *std::max_element(p.values.begin(), p.values.end());
  detail::require(peak > 0.0, "cannot scale an all-zero pattern");
  std::string out = "P5\n# columns: s ascending left to right\n";
  out += std::to_string(p.size()) + " 1\n65535\n";
  for (double v : p.values) {
    const auto q = static_cast<std::uint16_t>(std::lround(65535.0 * v / peak));
    out += static_cast<char>(q >> 8);
    out += static_cast<char>(q & 0xff);
  }
  return out;
}

/// Decoded P5 image (used by tests and tooling).
struct GrayImage {
  std::size_t width = 0, height = 0;
  unsigned maxval = 0;
  std::vector<std::uint16_t> pixels;  // row-major, top row first
};

inline GrayImage parse_pgm(const std::string& bytes) {
  GrayImage img;
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  if (token() != "P5") throw InvalidArgument("not a binary PGM");
  img.width = std::stoul(token());
  img.height = std::stoul(token());
  img.maxval = static_cast<unsigned>(std::stoul(token()));
  ++pos;  // single whitespace before raster
  const std::size_t bpp = img.maxval > 255 ? 2 : 1;
  if (bytes.size() < pos + img.width * img.height * bpp) throw InvalidArgument("truncated PGM");
  img.pixels.resize(img.width * img.height);
  for (std::size_t k = 0; k < img.pixels.size(); ++k) {
    if (bpp == 2) {
      img.pixels[k] = static_cast<std::uint16_t>(
          (static_cast<unsigned char>(bytes[pos + 2 * k]) << 8) |
          static_cast<unsigned char>(bytes[pos + 2 * k + 1]));
    } else {
      img.pixels[k] = static_cast<unsigned char>(bytes[pos + k]);
    }
  }
  return img;
}

}  // namespace noonlith::io
