#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "noonlith/biphoton.hpp"
#include "noonlith/errors.hpp"
#include "noonlith/geometry.hpp"
#include "noonlith/maps.hpp"
#include "noonlith/parallel.hpp"
#include "noonlith/quadrature.hpp"

namespace noonlith::biphoton {

/// Default finite slit width for the numerical oracle: 1/50 of the smaller
/// of the screen fringe spacing and the slit separation.
inline double default_slit_width(const SlitGeometry& geom) {
  return std::min(geom.fringe_spacing(), geom.separation) / 50.0;
}

struct OracleOptions {
  int slit_nodes = 8;           // Gauss-Legendre nodes per slit, first pass
  int max_slit_nodes = 64;
  double refinement_tol = 1e-4;  // relative L1 change between passes
  quadrature::Options momentum{};
  std::size_t memory_budget_bytes = std::size_t{512} << 20;
};

struct OracleReport {
  int slit_nodes = 0;
  double refinement_change = 0.0;
};

/// Two-photon amplitude in the slit plane, obtained from the crystal-plane
/// momentum profile by free propagation over `crystal_to_slit`:
///   psi(x1,x2) = ∫∫ E_p Xi exp(-i (k1^2+k2^2) dz / 2k) exp(-i (k1 x1 + k2 x2)).
/// The paraxial kernel acts as this multiplier in momentum space. A
/// distance of exactly 0 is the delta-kernel limit (no multiplier).
inline complex slit_plane_amplitude(const PumpPhaseMatchProfiles& profiles, double x1, double x2,
                                    double crystal_to_slit, double wavenumber,
                                    const quadrature::Options& opt = {}) {
  detail::require(crystal_to_slit >= 0.0, "crystal-to-slit distance must be non-negative");
  const double chirp = crystal_to_slit / (2.0 * wavenumber);
  return integrate_momentum(
      profiles,
      [&](double k1, double k2) {
        return std::polar(1.0, -(k1 * x1 + k2 * x2) - chirp * (k1 * k1 + k2 * k2));
      },
      opt);
}

namespace detail_oracle {

struct SlitRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline SlitRule slit_rule(const SlitGeometry& geom, int per_slit) {
  const auto gl = quadrature::gauss_legendre(per_slit);
  const double half = 0.5 * geom.slit_width;
  SlitRule r;
  for (double centre : {0.5 * geom.separation, -0.5 * geom.separation}) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      r.nodes.push_back(centre + half * gl.nodes[i]);
      r.weights.push_back(half * gl.weights[i]);
    }
  }
  return r;
}

}  // namespace detail_oracle

/// Brute-force reference for the screen coincidence map. The slit-plane
/// amplitude is integrated over both finite slit openings and propagated to
/// the screen with the Fresnel kernel; no delta approximation is made for
/// the slits. (The k'' transform pair across the infinitely thin slit is an
/// exact identity and is not integrated numerically.)
///
/// The slit integral is repeated with doubled node counts until the
/// normalized map changes by less than `refinement_tol` in relative L1.
inline CoincidenceMap propagate_numeric(const PumpPhaseMatchProfiles& profiles,
                                        const SlitGeometry& geom, double crystal_to_slit,
                                        double slit_to_screen, const DetectorGrid& grid,
                                        Normalization norm = Normalization::UnitSum,
                                        const OracleOptions& opt = {},
                                        OracleReport* report = nullptr) {
  profiles.validate();
  geom.validate();
  grid.validate();
  detail::require(geom.slit_width > 0.0, "numerical propagation needs slits of finite width");
  detail::require(slit_to_screen > 0.0, "slit-to-screen distance must be positive");
  detail::require(crystal_to_slit >= 0.0, "crystal-to-slit distance must be non-negative");
  detail::require(opt.slit_nodes >= 1 && opt.max_slit_nodes >= opt.slit_nodes,
                  "invalid slit node counts");

  const auto x = grid.positions();
  const std::size_t P = x.size();

  auto compute = [&](int per_slit) {
    const std::size_t m = 2 * static_cast<std::size_t>(per_slit);
    const std::size_t bytes = sizeof(complex) * (m * m + 2 * P * m) + sizeof(double) * P * P;
    if (bytes > opt.memory_budget_bytes) {
      throw BudgetExceeded("oracle needs " + std::to_string(bytes) + " bytes, budget is " +
                           std::to_string(opt.memory_budget_bytes));
    }
    const auto rule = detail_oracle::slit_rule(geom, per_slit);

    std::vector<complex> slit(m * m);
    parallel_for(m * m, [&](std::size_t idx) {
      const std::size_t a = idx / m, b = idx % m;
      slit[idx] = slit_plane_amplitude(profiles, rule.nodes[a], rule.nodes[b], crystal_to_slit,
                                       geom.wavenumber, opt.momentum);
    });

    std::vector<complex> H(P * m);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t a = 0; a < m; ++a)
        H[p * m + a] = rule.weights[a] *
                       fresnel_propagator(x[p], rule.nodes[a], slit_to_screen, geom.wavenumber);

    // T = H * slit, psi = T * H^T
    std::vector<complex> T(P * m);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t b = 0; b < m; ++b) {
        complex acc{};
        for (std::size_t a = 0; a < m; ++a) acc += H[p * m + a] * slit[a * m + b];
        T[p * m + b] = acc;
      }

    CoincidenceMap map(grid.indices(), norm);
    parallel_for(P, [&](std::size_t p) {
      for (std::size_t q = 0; q < P; ++q) {
        complex acc{};
        for (std::size_t b = 0; b < m; ++b) acc += T[p * m + b] * H[q * m + b];
        map.at(p, q) = std::norm(acc);
      }
    });
    map.normalize(Normalization::UnitSum);
    return map;
  };

  int nodes = opt.slit_nodes;
  CoincidenceMap previous = compute(nodes);
  double change = 0.0;
  while (true) {
    if (2 * nodes > opt.max_slit_nodes) {
      throw ConvergenceError("slit integral did not settle: last relative L1 change " +
                             std::to_string(change) + " at " + std::to_string(nodes) +
                             " nodes per slit");
    }
    nodes *= 2;
    CoincidenceMap next = compute(nodes);
    change = relative_l1_distance(next, previous);
    previous = std::move(next);
    if (change <= opt.refinement_tol) break;
  }
  if (report) *report = {nodes, change};
  previous.normalize(norm);
  return previous;
}

}  // namespace noonlith::biphoton
