#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <utility>
#include <vector>

#include "noonlith/errors.hpp"
#include "noonlith/summation.hpp"

namespace noonlith::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on P_n from the Chebyshev initial guess. Nodes are
/// returned in mirrored pairs so that symmetric integrands see symmetric
/// sample sets.
inline Rule gauss_legendre(int n) {
  detail::require(n >= 1 && n <= 256, "Gauss-Legendre order must be in [1, 256]");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

struct Options {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  /// Tolerance floor relative to the integral of |f|; keeps strongly
  /// cancelling integrals from refining forever.
  double l1_rel_tol = 1e-10;
  int order = 10;
  int initial_panels = 4;
  int max_depth = 14;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  double l1_norm = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

namespace detail_q {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

template <class T>
struct Estimate {
  T value{};
  double l1 = 0.0;
};

}  // namespace detail_q

/// Adaptive 1-D Gauss-Legendre. Each panel is compared against its two
/// halves; the difference is the error estimate and the halves' sum is
/// kept. Panels at `max_depth` are accepted and flagged unconverged if
/// they still exceed their share of the tolerance.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  detail::require(std::isfinite(a) && std::isfinite(b) && b > a, "need finite a < b");
  detail::require(opt.initial_panels >= 1, "initial_panels must be positive");
  const Rule rule = gauss_legendre(opt.order);
  Result<T> res;

  auto panel = [&](double lo, double hi) {
    detail_q::Estimate<T> e;
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    CompensatedSum<T> acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const T v = f(c + h * rule.nodes[i]);
      acc.add(T(rule.weights[i] * h) * v);
      e.l1 += rule.weights[i] * h * detail_q::magnitude(v);
    }
    e.value = acc.value();
    res.evaluations += rule.nodes.size();
    return e;
  };

  struct Item {
    double lo, hi;
    detail_q::Estimate<T> est;
    int depth;
  };
  std::vector<Item> stack;
  CompensatedSum<T> first_pass;
  double l1_total = 0.0;
  const double width = (b - a) / opt.initial_panels;
  for (int p = opt.initial_panels - 1; p >= 0; --p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == opt.initial_panels) ? b : lo + width;
    auto e = panel(lo, hi);
    first_pass.add(e.value);
    l1_total += e.l1;
    stack.push_back({lo, hi, e, 0});
  }
  const double scale = std::max({opt.rel_tol * detail_q::magnitude(first_pass.value()),
                                 opt.abs_tol, opt.l1_rel_tol * l1_total});

  CompensatedSum<T> total;
  double error = 0.0, l1 = 0.0;
  bool converged = true;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (it.lo + it.hi);
    auto left = panel(it.lo, mid);
    auto right = panel(mid, it.hi);
    const T fine = left.value + right.value;
    const double err = detail_q::magnitude(fine - it.est.value);
    const double local = scale * (it.hi - it.lo) / (b - a);
    if (err <= local || it.depth + 1 >= opt.max_depth) {
      if (err > local) converged = false;
      total.add(fine);
      error += err;
      l1 += left.l1 + right.l1;
    } else {
      stack.push_back({mid, it.hi, right, it.depth + 1});
      stack.push_back({it.lo, mid, left, it.depth + 1});
    }
  }
  res.value = total.value();
  res.error = error;
  res.l1_norm = l1;
  const double final_scale = std::max(
      {opt.rel_tol * detail_q::magnitude(res.value), opt.abs_tol, opt.l1_rel_tol * l1});
  res.converged = converged || error <= final_scale;
  return res;
}

/// Axis-aligned integration rectangle.
struct Box {
  double x_lo, x_hi, y_lo, y_hi;
  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
};

/// Adaptive tensor-product Gauss-Legendre over a rectangle. Cells are
/// quartered while the coarse rule and the sum of the four children
/// disagree by more than the cell's area share of the tolerance.
template <class F>
auto integrate_2d(F&& f, const Box& box, const Options& opt = {}, int panels_x = 0,
                  int panels_y = 0) -> Result<std::decay_t<decltype(f(box.x_lo, box.y_lo))>> {
  using T = std::decay_t<decltype(f(box.x_lo, box.y_lo))>;
  detail::require(box.x_hi > box.x_lo && box.y_hi > box.y_lo, "degenerate integration box");
  const int nx = panels_x > 0 ? panels_x : opt.initial_panels;
  const int ny = panels_y > 0 ? panels_y : opt.initial_panels;
  const Rule rule = gauss_legendre(opt.order);
  Result<T> res;

  auto cell = [&](const Box& c) {
    detail_q::Estimate<T> e;
    const double cx = 0.5 * (c.x_lo + c.x_hi), hx = 0.5 * (c.x_hi - c.x_lo);
    const double cy = 0.5 * (c.y_lo + c.y_hi), hy = 0.5 * (c.y_hi - c.y_lo);
    CompensatedSum<T> acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = cx + hx * rule.nodes[i];
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double w = rule.weights[i] * rule.weights[j] * hx * hy;
        const T v = f(x, cy + hy * rule.nodes[j]);
        acc.add(T(w) * v);
        e.l1 += w * detail_q::magnitude(v);
      }
    }
    e.value = acc.value();
    res.evaluations += rule.nodes.size() * rule.nodes.size();
    return e;
  };

  struct Item {
    Box box;
    detail_q::Estimate<T> est;
    int depth;
  };
  std::vector<Item> stack;
  CompensatedSum<T> first_pass;
  double l1_total = 0.0;
  const double wx = (box.x_hi - box.x_lo) / nx, wy = (box.y_hi - box.y_lo) / ny;
  for (int ix = nx - 1; ix >= 0; --ix) {
    for (int iy = ny - 1; iy >= 0; --iy) {
      Box c{box.x_lo + ix * wx, ix + 1 == nx ? box.x_hi : box.x_lo + (ix + 1) * wx,
            box.y_lo + iy * wy, iy + 1 == ny ? box.y_hi : box.y_lo + (iy + 1) * wy};
      auto e = cell(c);
      first_pass.add(e.value);
      l1_total += e.l1;
      stack.push_back({c, e, 0});
    }
  }
  const double scale = std::max({opt.rel_tol * detail_q::magnitude(first_pass.value()),
                                 opt.abs_tol, opt.l1_rel_tol * l1_total});
  const double total_area = box.area();

  CompensatedSum<T> total;
  double error = 0.0, l1 = 0.0;
  bool converged = true;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const Box& c = it.box;
    const double mx = 0.5 * (c.x_lo + c.x_hi), my = 0.5 * (c.y_lo + c.y_hi);
    const std::array<Box, 4> kids{Box{c.x_lo, mx, c.y_lo, my}, Box{c.x_lo, mx, my, c.y_hi},
                                  Box{mx, c.x_hi, c.y_lo, my}, Box{mx, c.x_hi, my, c.y_hi}};
    std::array<detail_q::Estimate<T>, 4> est;
    T fine{};
    double fine_l1 = 0.0;
    for (int k = 0; k < 4; ++k) {
      est[k] = cell(kids[k]);
      fine += est[k].value;
      fine_l1 += est[k].l1;
    }
    const double err = detail_q::magnitude(fine - it.est.value);
    const double local = scale * c.area() / total_area;
    if (err <= local || it.depth + 1 >= opt.max_depth) {
      if (err > local) converged = false;
      total.add(fine);
      error += err;
      l1 += fine_l1;
    } else {
      for (int k = 3; k >= 0; --k) stack.push_back({kids[k], est[k], it.depth + 1});
    }
  }
  res.value = total.value();
  res.error = error;
  res.l1_norm = l1;
  const double final_scale = std::max(
      {opt.rel_tol * detail_q::magnitude(res.value), opt.abs_tol, opt.l1_rel_tol * l1});
  res.converged = converged || error <= final_scale;
  return res;
}

}  // namespace noonlith::quadrature
