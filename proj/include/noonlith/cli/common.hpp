#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/io/atomic_file.hpp"
#include "noonlith/io/json.hpp"
#include "noonlith/io/units.hpp"

namespace noonlith::cli {

enum ExitCode : int {
  ok = 0,
  usage = 1,
  io_error = 2,
  validation_failure = 3,
  no_convergence = 4,
};

/// Output directory and selected formats shared by the writing subcommands.
struct OutputOptions {
  std::filesystem::path dir = ".";
  std::vector<std::string> formats;
  std::string name;  // file stem override
  bool timestamp = false;

  bool wants(std::string_view f) const {
    for (const auto& x : formats)
      if (x == f) return true;
    return false;
  }

  void validate(const std::set<std::string>& allowed) const {
    detail::require(!formats.empty(), "at least one output format must be selected");
    for (const auto& f : formats)
      detail::require(allowed.count(f) > 0, "format '" + f + "' is not available here");
  }

  std::filesystem::path path(const std::string& stem, std::string_view ext) const {
    return dir / ((name.empty() ? stem : name) + "." + std::string(ext));
  }
};

/// Writes `bytes` atomically and reports the path on `log`.
inline void emit(const std::filesystem::path& path, std::string_view bytes, std::ostream& log) {
  io::write_file_atomic(path, bytes);
  log << "wrote " << path.string() << '\n';
}

inline io::Json run_meta(const OutputOptions& out) {
  io::Json meta = io::Json::object();
  meta["tool"] = "noonlith";
  if (out.timestamp) {
    const auto now = std::chrono::system_clock::now();
    meta["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                                 now.time_since_epoch())
                                 .count();
  }
  return meta;
}

/// Length option given either with a unit suffix or as a bare number in a
/// fixed unit. At most one of the two may be set.
inline double pick_length(const std::string& with_suffix, double in_unit, double unit_scale,
                          double fallback, const std::string& what) {
  const bool a = !with_suffix.empty(), b = !std::isnan(in_unit);
  detail::require(!(a && b), "give " + what + " only once");
  if (a) return io::parse_length(with_suffix);
  if (b) return in_unit * unit_scale;
  return fallback;
}

}  // namespace noonlith::cli
