#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/exposure.hpp"

namespace noonlith::exposure {

/// Exact per-bunch probability that bunch lands all N photons on pixel s,
/// by enumerating every photon configuration (S_px^N tuples). Written
/// directly from the two models, without the Monte Carlo samplers.
inline std::vector<double> exact_event_probabilities(const Config& cfg) {
  cfg.validate();
  const auto S = static_cast<std::size_t>(cfg.pixels);
  std::vector<double> e(S, 0.0);
  const bool fringe = cfg.weighting.kind == Weighting::Kind::Fringe;
  auto coord = [&](std::size_t i) { return pixel_coordinate(static_cast<std::int64_t>(i), cfg.pixels); };

  if (cfg.model == Model::Boto) {
    double total = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      double w = 1.0;
      if (fringe) {
        const double c = std::cos(cfg.photons * cfg.weighting.theta * coord(s));
        w = c * c;
      }
      e[s] = w;
      total += w;
    }
    for (double& v : e) v /= total;
    return e;
  }

  const double tuples = std::pow(static_cast<double>(S), cfg.photons);
  detail::require(tuples <= 1e8, "too many photon configurations to enumerate");
  std::vector<std::size_t> idx(static_cast<std::size_t>(cfg.photons), 0);
  double total = 0.0;
  while (true) {
    double sum = 0.0;
    bool same = true;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      sum += coord(idx[p]);
      same = same && idx[p] == idx[0];
    }
    double w = 1.0;
    if (fringe) {
      const double c = std::cos(cfg.weighting.theta * sum);
      w = c * c;
    }
    total += w;
    if (same) e[idx[0]] += w;
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == S) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  for (double& v : e) v /= total;
  return e;
}

/// Expected bunch count to completion from the absorbing Markov chain over
/// per-pixel event counts (capped at M) of the required pixels.
inline double expected_completion_bunches(const std::vector<double>& event_prob,
                                          const std::vector<bool>& required,
                                          std::int64_t target_events) {
  detail::require(event_prob.size() == required.size(), "size mismatch");
  detail::require(target_events >= 1, "target events must be at least 1");
  std::vector<double> p;
  for (std::size_t i = 0; i < required.size(); ++i)
    if (required[i]) p.push_back(event_prob[i]);
  if (p.empty()) return 0.0;
  const auto radix = static_cast<std::uint64_t>(target_events + 1);
  double states_d = std::pow(static_cast<double>(radix), static_cast<double>(p.size()));
  detail::require(states_d <= 2e7, "Markov state space too large");
  const auto states = static_cast<std::uint64_t>(states_d);

  std::vector<std::uint64_t> stride(p.size());
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    stride[i] = s;
    s *= radix;
  }
  std::vector<double> expect(states, 0.0);
  for (std::uint64_t st = states; st-- > 0;) {
    double out = 0.0, acc = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::uint64_t count = (st / stride[i]) % radix;
      if (count < static_cast<std::uint64_t>(target_events)) {
        out += p[i];
        acc += p[i] * expect[st + stride[i]];
      }
    }
    if (out == 0.0) {
      expect[st] = 0.0;  // absorbing: every required pixel done
    } else {
      expect[st] = acc / out;
    }
  }
  return expect[0];
}

/// Exact expected bunches to completion for a configuration.
inline double exact_expected_bunches(const Config& cfg) {
  return expected_completion_bunches(exact_event_probabilities(cfg), required_pixels(cfg),
                                     cfg.target_events);
}

}  // namespace noonlith::exposure
