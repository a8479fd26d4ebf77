#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "noonlith/parallel.hpp"
#include "noonlith/quadrature.hpp"

using namespace noonlith;
using namespace noonlith::quadrature;
using std::numbers::pi;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 10, 20}) {
    const auto r = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(sum, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(GaussLegendre, NodesAreMirrored) {
  const auto r = gauss_legendre(7);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    EXPECT_EQ(r.nodes[i], -r.nodes[r.nodes.size() - 1 - i]);
    EXPECT_EQ(r.weights[i], r.weights[r.nodes.size() - 1 - i]);
  }
  EXPECT_THROW(gauss_legendre(0), InvalidArgument);
}

TEST(Integrate, OscillatoryCosine) {
  Options opt;
  opt.rel_tol = 1e-12;
  const auto r = integrate([](double x) { return std::cos(200.0 * x); }, 0.0, 1.0, opt);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::sin(200.0) / 200.0, 1e-13);
}

TEST(Integrate, ComplexChirp) {
  // ∫_{-L}^{L} exp(i a x^2) exp(-x^2) dx -> sqrt(pi / (1 - i a)) for large L
  const double a = 30.0;
  Options opt;
  opt.rel_tol = 1e-11;
  const auto r = integrate(
      [a](double x) { return std::exp(std::complex<double>(-x * x, a * x * x)); }, -8.0, 8.0, opt);
  const auto exact = std::sqrt(pi / std::complex<double>(1.0, -a));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(std::abs(r.value - exact), 1e-10);
}

TEST(Integrate, FlagsNonConvergence) {
  Options opt;
  opt.rel_tol = 1e-14;
  opt.l1_rel_tol = 0.0;
  opt.max_depth = 2;
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
  EXPECT_FALSE(r.converged);
}

TEST(Integrate2D, SeparableGaussian) {
  Options opt;
  opt.rel_tol = 1e-12;
  const auto r = integrate_2d([](double x, double y) { return std::exp(-x * x - 2 * y * y); },
                              Box{-9, 9, -9, 9}, opt);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, pi / std::sqrt(2.0), 1e-11);
}

TEST(Integrate2D, OscillatoryComplex) {
  Options opt;
  opt.rel_tol = 1e-10;
  const auto r = integrate_2d(
      [](double x, double y) { return std::polar(1.0, 40.0 * x + 25.0 * y); }, Box{0, 1, 0, 1},
      opt);
  const std::complex<double> i(0, 1);
  const auto exact = (std::exp(40.0 * i) - 1.0) / (40.0 * i) * (std::exp(25.0 * i) - 1.0) / (25.0 * i);
  EXPECT_LT(std::abs(r.value - exact), 1e-11);
}

TEST(ParallelFor, EveryIndexOnceAndExceptionsPropagate) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(
                   100, [](std::size_t i) {
                     if (i == 37) throw std::runtime_error("boom");
                   },
                   3),
               std::runtime_error);
}

TEST(ParallelFor, ThreadCapFromEnvironment) {
  ::setenv("NOONLITH_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  ::unsetenv("NOONLITH_THREADS");
  EXPECT_GE(worker_count(), 1u);
}
