#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace noonlith {

/// Neumaier compensated accumulator. The result depends only on the order
/// of `add` calls, never on thread scheduling.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, carry_, x);
    } else {
      double re = sum_.real(), cr = carry_.real();
      double im = sum_.imag(), ci = carry_.imag();
      add_real(re, cr, x.real());
      add_real(im, ci, x.imag());
      sum_ = T(re, im);
      carry_ = T(cr, ci);
    }
  }

  T value() const { return sum_ + carry_; }

 private:
  static void add_real(double& sum, double& carry, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T carry_{};
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum<double> acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

}  // namespace noonlith
