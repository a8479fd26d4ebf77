#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/parallel.hpp"
#include "noonlith/pattern_models.hpp"
#include "noonlith/random.hpp"
#include "noonlith/summation.hpp"

namespace noonlith::exposure {

using patterns::Model;

/// Pixel weighting. Uniform: every pixel equally likely. Fringe: the
/// double-slit pattern with single-photon phase step `theta` per pixel.
struct Weighting {
  enum class Kind { Uniform, Fringe } kind = Kind::Uniform;
  double theta = 0.0;

  static Weighting uniform() { return {}; }
  static Weighting fringe(double theta) { return {Kind::Fringe, theta}; }
};

struct Config {
  std::int64_t pixels = 2;        // S_px
  int photons = 2;                // N
  std::int64_t target_events = 1; // M per pixel
  Model model = Model::Steuernagel;
  Weighting weighting{};
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  double node_threshold = 1e-3;
  /// Per-trial bunch budget; a trial that has not completed by then fails.
  std::uint64_t max_bunches = std::uint64_t{1} << 40;

  const Config& validate() const {
    detail::require(pixels >= 1, "pixel count must be at least 1");
    detail::require(photons >= 1, "photon number N must be at least 1");
    detail::require(target_events >= 1, "target events M must be at least 1");
    detail::require(trials >= 1, "trial count must be at least 1");
    detail::require(node_threshold >= 0.0 && node_threshold < 1.0,
                    "node threshold must lie in [0, 1)");
    detail::require(max_bunches >= 1, "bunch budget must be positive");
    return *this;
  }
};

/// Centre coordinate of pixel i, symmetric about zero.
inline double pixel_coordinate(std::int64_t i, std::int64_t pixels) {
  return static_cast<double>(i) - 0.5 * static_cast<double>(pixels - 1);
}

/// Relative same-pixel event weight per pixel: cos^2(N theta s) under
/// fringe weighting, 1 under uniform weighting. Identical for both models.
inline std::vector<double> event_weights(const Config& cfg) {
  std::vector<double> w(static_cast<std::size_t>(cfg.pixels), 1.0);
  if (cfg.weighting.kind == Weighting::Kind::Fringe) {
    for (std::int64_t i = 0; i < cfg.pixels; ++i) {
      const double c = std::cos(cfg.photons * cfg.weighting.theta * pixel_coordinate(i, cfg.pixels));
      w[static_cast<std::size_t>(i)] = c * c;
    }
  }
  return w;
}

/// Pixels that must reach the target count: those whose event weight is at
/// least node_threshold times the largest.
inline std::vector<bool> required_pixels(const Config& cfg) {
  const auto w = event_weights(cfg);
  const double peak = *std::max_element(w.begin(), w.end());
  std::vector<bool> req(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) req[i] = w[i] >= cfg.node_threshold * peak;
  return req;
}

struct Result {
  double mean_bunches = 0.0;
  double std_error = 0.0;
  std::vector<std::uint64_t> per_trial;
  /// Same-pixel events per pixel, summed over all trials.
  std::vector<std::uint64_t> pixel_events;
  std::optional<double> fitted_exponent;
};

/// Raised when a trial exhausts its bunch budget.
class BudgetExhausted : public BudgetExceeded {
 public:
  BudgetExhausted(std::int64_t trial, std::uint64_t budget)
      : BudgetExceeded("trial " + std::to_string(trial) + " did not complete within " +
                       std::to_string(budget) +
                       " bunches; check node_threshold for fringe weighting"),
        trial_(trial) {}
  std::int64_t trial() const { return trial_; }

 private:
  std::int64_t trial_;
};

namespace detail_sim {

class PixelSampler {
 public:
  explicit PixelSampler(const std::vector<double>& weights) {
    cumulative_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) cumulative_[i] = (acc += weights[i]);
    total_ = acc;
  }
  std::size_t draw(StreamRng& rng) const {
    const double u = rng.uniform() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

struct TrialOutcome {
  std::uint64_t bunches = 0;
  std::vector<std::uint64_t> events;
};

inline TrialOutcome run_trial(const Config& cfg, const std::vector<bool>& required,
                              const PixelSampler& boto_sampler, std::int64_t trial) {
  StreamRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
  const auto S = static_cast<std::uint64_t>(cfg.pixels);
  TrialOutcome out;
  out.events.assign(S, 0);
  std::int64_t remaining = std::count(required.begin(), required.end(), true);
  const auto target = static_cast<std::uint64_t>(cfg.target_events);
  const bool fringe = cfg.weighting.kind == Weighting::Kind::Fringe;

  auto record = [&](std::uint64_t pixel) {
    if (++out.events[pixel] == target && required[pixel]) --remaining;
  };

  while (remaining > 0) {
    if (out.bunches >= cfg.max_bunches) throw BudgetExhausted(trial, cfg.max_bunches);
    ++out.bunches;
    if (cfg.model == Model::Boto) {
      // all N photons arrive together
      record(fringe ? boto_sampler.draw(rng) : rng.below(S));
      continue;
    }
    if (!fringe) {
      // independent uniform photons; fire only if all share the first pixel
      const std::uint64_t first = rng.below(S);
      bool same = true;
      for (int p = 1; p < cfg.photons && same; ++p) same = rng.below(S) == first;
      if (same) record(first);
      continue;
    }
    // Joint law P(s_1..s_N) ∝ cos^2(theta sum s_i), by rejection from the
    // uniform proposal; one bunch is one accepted draw.
    std::uint64_t first = 0;
    bool same = true;
    while (true) {
      double sum = 0.0;
      first = rng.below(S);
      same = true;
      sum += pixel_coordinate(static_cast<std::int64_t>(first), cfg.pixels);
      for (int p = 1; p < cfg.photons; ++p) {
        const std::uint64_t px = rng.below(S);
        same = same && px == first;
        sum += pixel_coordinate(static_cast<std::int64_t>(px), cfg.pixels);
      }
      const double c = std::cos(cfg.weighting.theta * sum);
      if (rng.uniform() < c * c) break;
    }
    if (same) record(first);
  }
  return out;
}

}  // namespace detail_sim

/// Monte Carlo exposure: bunches (state preparations) until every required
/// pixel has registered `target_events` N-fold same-pixel events.
///
/// Boto: every bunch deposits all N photons in one pixel. Steuernagel:
/// photons land independently of one another (uniform weighting) or from
/// the joint cos^2(theta sum s) law (fringe weighting); only all-same-pixel
/// bunches are events. Deterministic for a given config, independent of
/// thread count.
inline Result simulate_exposure(const Config& cfg) {
  cfg.validate();
  const auto required = required_pixels(cfg);
  const detail_sim::PixelSampler sampler(event_weights(cfg));
  const auto trials = static_cast<std::size_t>(cfg.trials);

  std::vector<detail_sim::TrialOutcome> outcomes(trials);
  parallel_for(trials, [&](std::size_t t) {
    outcomes[t] = detail_sim::run_trial(cfg, required, sampler, static_cast<std::int64_t>(t));
  });

  Result r;
  r.per_trial.resize(trials);
  r.pixel_events.assign(static_cast<std::size_t>(cfg.pixels), 0);
  CompensatedSum<double> sum;
  for (std::size_t t = 0; t < trials; ++t) {
    r.per_trial[t] = outcomes[t].bunches;
    sum.add(static_cast<double>(outcomes[t].bunches));
    for (std::size_t p = 0; p < r.pixel_events.size(); ++p)
      r.pixel_events[p] += outcomes[t].events[p];
  }
  r.mean_bunches = sum.value() / static_cast<double>(trials);
  if (trials > 1) {
    CompensatedSum<double> sq;
    for (auto b : r.per_trial) {
      const double d = static_cast<double>(b) - r.mean_bunches;
      sq.add(d * d);
    }
    const double var = sq.value() / static_cast<double>(trials - 1);
    r.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return r;
}

/// Ordinary least squares y = intercept + slope x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  detail::require(x.size() == y.size(), "fit inputs differ in length");
  detail::require(x.size() >= 2, "need at least two points to fit");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("degenerate fit: predictor has zero variance");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

struct ScalingPoint {
  std::int64_t pixels;
  int photons;
  Result result;
};

/// exponent_S: slope of log(mean) against log(S_px) at fixed N.
/// exponent_N_base: exp of the slope of log(mean) against N at fixed S_px.
struct ScalingFit {
  std::optional<double> exponent_S;
  std::optional<double> r_squared_S;
  std::optional<int> fixed_photons;
  std::optional<double> exponent_N_base;
  std::optional<double> r_squared_N;
  std::optional<std::int64_t> fixed_pixels;

  /// Worst r^2 among the fits performed.
  double r_squared() const {
    double r = 1.0;
    if (r_squared_S) r = std::min(r, *r_squared_S);
    if (r_squared_N) r = std::min(r, *r_squared_N);
    return r;
  }
};

/// Fits whichever exponents the data supports: at least three distinct
/// S_px at one N, and/or three distinct N at one S_px. When several groups
/// qualify the largest is used (ties: smallest N or S_px).
inline ScalingFit fit_scaling(const std::vector<ScalingPoint>& points) {
  ScalingFit fit;
  auto distinct_count = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };

  std::vector<int> photon_values;
  std::vector<std::int64_t> pixel_values;
  for (const auto& p : points) {
    detail::require(p.result.mean_bunches > 0.0, "mean bunch counts must be positive");
    photon_values.push_back(p.photons);
    pixel_values.push_back(p.pixels);
  }
  std::sort(photon_values.begin(), photon_values.end());
  photon_values.erase(std::unique(photon_values.begin(), photon_values.end()), photon_values.end());
  std::sort(pixel_values.begin(), pixel_values.end());
  pixel_values.erase(std::unique(pixel_values.begin(), pixel_values.end()), pixel_values.end());

  std::size_t best = 0;
  for (int n : photon_values) {
    std::vector<double> x, y;
    for (const auto& p : points)
      if (p.photons == n) {
        x.push_back(std::log(static_cast<double>(p.pixels)));
        y.push_back(std::log(p.result.mean_bunches));
      }
    if (distinct_count(x) >= 3 && distinct_count(x) > best) {
      best = distinct_count(x);
      const auto f = fit_line(x, y);
      fit.exponent_S = f.slope;
      fit.r_squared_S = f.r_squared;
      fit.fixed_photons = n;
    }
  }
  best = 0;
  for (auto s : pixel_values) {
    std::vector<double> x, y;
    for (const auto& p : points)
      if (p.pixels == s) {
        x.push_back(static_cast<double>(p.photons));
        y.push_back(std::log(p.result.mean_bunches));
      }
    if (distinct_count(x) >= 3 && distinct_count(x) > best) {
      best = distinct_count(x);
      const auto f = fit_line(x, y);
      fit.exponent_N_base = std::exp(f.slope);
      fit.r_squared_N = f.r_squared;
      fit.fixed_pixels = s;
    }
  }
  if (!fit.exponent_S && !fit.exponent_N_base) {
    throw InvalidArgument(
        "insufficient data: need >= 3 distinct pixel counts at one N or >= 3 distinct N at "
        "one pixel count");
  }
  return fit;
}

}  // namespace noonlith::exposure
