#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "noonlith/fringes.hpp"
#include "noonlith/gaussian_noon.hpp"

using namespace noonlith;
using namespace noonlith::gaussian;
using std::numbers::pi;

namespace {

// alpha = 30 deg, lambda = 1 um, L = 10 cm, w = 1 mm
Setup reference() { return Setup{}; }

Setup with_beta(double beta, int n = 2) {
  Setup s = reference().with_photons(n);
  s.waist = std::sqrt(s.wavelength * s.distance / (pi * std::sqrt(beta)));
  return s;
}

double spacing(Model m, const Setup& s, CubicTerm cubic) {
  const double expect = expected_fringe_spacing(s);
  const auto x = linspace(0.0, 10 * expect, 2001);  // 200 points per fringe
  const auto sc = scan(m, s, x, cubic);
  return median_peak_spacing(sc.positions, sc.values).value();
}

double envelope_half_width(Model m, const Setup& s) {
  const double a = m == Model::Noon ? noon_envelope_coefficient(s) : delta_envelope_coefficient(s);
  const auto x = linspace(0.0, 2.0 * std::sqrt(2.0 / a), 40001);
  const auto sc = scan(m, s, x);
  return half_width_at_level(sc.positions, sc.envelope, std::exp(-2.0)).value();
}

}  // namespace

TEST(Setup, DerivedQuantities) {
  const auto s = reference();
  EXPECT_NEAR(s.beta(), 1e-12 * 1e-2 / (pi * pi * 1e-12), 1e-15);
  EXPECT_NEAR(s.inverse_q().imag(), -1e-6 / (pi * 1e-6), 1e-15);
  EXPECT_EQ(s.inverse_q().real(), 0.0);
  EXPECT_NEAR(with_beta(1e4).beta(), 1e4, 1e-6);
}

TEST(Setup, Validation) {
  auto s = reference();
  s.beam_half_angle = pi / 2;
  EXPECT_THROW(s.validate(), InvalidArgument);
  EXPECT_THROW(reference().with_photons(0).validate(), InvalidArgument);
  EXPECT_THROW(reference().with_waist(-1).validate(), InvalidArgument);
}

TEST(Setup, ValidityWarning) {
  EXPECT_FALSE(reference().outside_validity(0.01));
  EXPECT_TRUE(reference().outside_validity(0.03));
  const auto sc = scan(Model::Noon, reference(), linspace(-0.05, 0.05, 11));
  EXPECT_TRUE(sc.validity_warning);
}

TEST(NoonSamePoint, OneAtOrigin) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(noon_same_point_probability(reference().with_photons(n), 0.0), 1.0);
    EXPECT_EQ(delta_state_probability(reference().with_photons(n), 0.0), 1.0);
  }
}

TEST(NoonSamePoint, SpacingHalvesFromOneToTwoPhotons) {
  const double s1 = spacing(Model::Noon, reference().with_photons(1), CubicTerm::Include);
  const double s2 = spacing(Model::Noon, reference().with_photons(2), CubicTerm::Include);
  EXPECT_NEAR(s2 / (s1 / 2), 1.0, 1e-3);
}

TEST(NoonSamePoint, SpacingLawForOneToFourPhotons) {
  for (int n = 1; n <= 4; ++n) {
    const auto s = reference().with_photons(n);
    EXPECT_NEAR(spacing(Model::Noon, s, CubicTerm::Include) / (1e-6 / (2 * n * 0.5)), 1.0, 5e-3)
        << n;
  }
}

TEST(NoonSamePoint, EnvelopeWidthScalesAsInverseRootN) {
  const double w1 = envelope_half_width(Model::Noon, reference().with_photons(1));
  const double w4 = envelope_half_width(Model::Noon, reference().with_photons(4));
  EXPECT_NEAR(w4 / w1, 0.5, 1e-3);
}

TEST(NoonSamePoint, ValuesBoundedByEnvelope) {
  for (auto m : {Model::Noon, Model::Delta})
    for (int n = 1; n <= 4; ++n) {
      const auto sc = scan(m, reference().with_photons(n), linspace(-3e-3, 3e-3, 3001));
      for (std::size_t i = 0; i < sc.values.size(); ++i)
        EXPECT_LE(sc.values[i], sc.envelope[i] + 1e-12);
    }
}

TEST(NoonSamePoint, CubicTermIsNegligibleAtReferenceParameters) {
  const auto x = linspace(-1e-4, 1e-4, 501);
  const auto a = scan(Model::Noon, reference(), x, CubicTerm::Include);
  const auto b = scan(Model::Noon, reference(), x, CubicTerm::Drop);
  // cos^2 moves by at most the phase shift, k3 x^3, about 2e-7 rad here
  const double shift = noon_cubic_coefficient(reference()) * 1e-12;
  EXPECT_LT(shift, 1e-6);
  EXPECT_LE(max_abs_difference(a.values, b.values), shift);
  EXPECT_GT(max_abs_difference(a.values, b.values), 0.0);
}

TEST(NoonPair, AntiDiagonalRidgeFollowsEnvelopeOnly) {
  const auto s = reference();
  const double a = noon_envelope_coefficient(s) / s.photons;
  for (double x : {0.0, 1e-4, 3e-3})
    EXPECT_NEAR(noon_pair_coincidence(s, x, -x), std::exp(-2 * a * x * x), 1e-12);
}

TEST(NoonPair, DiagonalReproducesSamePointWithoutCubicTerm) {
  const auto s = with_beta(50.0);
  for (double x : {-2e-5, 1e-6, 3.3e-5})
    EXPECT_NEAR(noon_pair_coincidence(s, x, x),
                noon_same_point_probability(s, x, CubicTerm::Drop), 1e-12);
}

TEST(NoonPair, NotDiagonalConcentratedForLargeBeta) {
  const auto s = with_beta(1e3);
  const double width = std::sqrt(2.0 / (noon_envelope_coefficient(s) / 2));
  const auto map = pair_map(Model::Noon, s, linspace(-width, width, 101), Normalization::UnitSum);
  EXPECT_GT(map.off_diagonal_fraction(), 0.5);
}

TEST(DeltaState, SameSpacingAsNoon) {
  for (int n = 1; n <= 4; ++n) {
    const auto s = reference().with_photons(n);
    EXPECT_NEAR(spacing(Model::Delta, s, CubicTerm::Drop) / spacing(Model::Noon, s, CubicTerm::Drop),
                1.0, 1e-3);
  }
}

TEST(DeltaState, DoublingWaistMovesCoefficientsOppositeWays) {
  const auto s = with_beta(1e4);
  const auto d = s.with_waist(2 * s.waist);
  ASSERT_GE(d.beta(), 100.0);
  EXPECT_NEAR(delta_envelope_coefficient(d) / delta_envelope_coefficient(s), 4.0, 0.2);
  EXPECT_NEAR(noon_envelope_coefficient(d) / noon_envelope_coefficient(s), 0.25, 0.0125);
}

TEST(DeltaState, WaistDerivativeSignsDifferAtLargeBeta) {
  const auto s = with_beta(1e4);
  const double h = 1e-4 * s.waist;
  auto deriv = [&](auto coeff) {
    return (coeff(s.with_waist(s.waist + h)) - coeff(s.with_waist(s.waist - h))) / (2 * h);
  };
  const double dn = deriv([](const gaussian::Setup& t) { return noon_envelope_coefficient(t); });
  const double dd = deriv([](const gaussian::Setup& t) { return delta_envelope_coefficient(t); });
  EXPECT_LT(dn, 0.0);
  EXPECT_GT(dd, 0.0);
}

// At N = 1 the two envelope coefficients differ by exactly a factor beta,
// so the scans coincide only when beta = 1.
TEST(DeltaState, SinglePhotonCoefficientsDifferByBeta) {
  for (double beta : {1e-3, 0.5, 1.0, 40.0}) {
    const auto s = with_beta(beta, 1);
    EXPECT_NEAR(noon_envelope_coefficient(s) / delta_envelope_coefficient(s), s.beta(), 1e-9 * beta);
  }
}

TEST(DeltaState, SinglePhotonScansCoincideAtBetaOne) {
  const auto s = with_beta(1.0, 1);
  const auto x = linspace(-0.02, 0.02, 1001);
  const auto a = scan(Model::Noon, s, x, CubicTerm::Drop);
  const auto b = scan(Model::Delta, s, x);
  EXPECT_LE(max_abs_difference(a.values, b.values), 1e-9);
}

TEST(DeltaPair, DependsOnlyOnSum) {
  const auto s = with_beta(20.0);
  const double x1 = std::ldexp(3.0, -16), x2 = std::ldexp(-5.0, -17);
  for (int e = -30; e <= -12; e += 3) {
    const double d = std::ldexp(1.0, e);
    EXPECT_EQ(delta_pair_coincidence(s, x1, x2), delta_pair_coincidence(s, x1 + d, x2 - d));
  }
  EXPECT_EQ(delta_pair_coincidence(s, 1e-3, -1e-3), 1.0);
}

TEST(DeltaPair, AntiDiagonalContrastGrowsWithDistance) {
  const auto s = with_beta(20.0);
  double previous = 0.0;
  for (double x = 1e-6; x < 1e-3; x *= 2) {
    const double r = delta_pair_coincidence(s, x, -x) / noon_pair_coincidence(s, x, -x);
    EXPECT_GT(r, previous);
    previous = r;
  }
}

TEST(Visibility, SteepBeamAlwaysVisible) {
  auto s = reference();
  s.beam_half_angle = pi / 3;
  const auto v = visibility_conditions(s);
  EXPECT_TRUE(v.alpha_above_quarter_pi);
  EXPECT_TRUE(v.always_satisfied);
  for (double x : {0.0, 1e-3, 1.0, 1e3}) EXPECT_TRUE(v.satisfied(x));
}

TEST(Visibility, LargeBetaLimitOfLowerThreshold) {
  const auto s = with_beta(1e12);
  const double a = s.beam_half_angle;
  const double limit = std::sin(a) / std::pow(std::cos(a), 2) * pi * s.waist * s.waist / s.wavelength;
  EXPECT_NEAR(visibility_conditions(s).x_low / limit, 1.0, 1e-9);
}

// Between the two thresholds the envelope falls by 1/e in less than one
// fringe.
TEST(Visibility, GapBetweenThresholdsHasNoVisibleFringes) {
  const auto s = with_beta(1e4);
  const auto v = visibility_conditions(s);
  ASSERT_LT(v.x_low, v.x_high);
  const double x = 0.5 * (v.x_low + v.x_high);
  EXPECT_FALSE(v.satisfied(x));
  const double a = noon_envelope_coefficient(s);
  const double decay = std::sqrt(x * x + 1.0 / a) - x;  // envelope drops by 1/e over [x, x+decay]
  // The envelope underflows here, so sample the cosine factor on its own.
  const double k1 = fringe_wavenumber(s), k3 = noon_cubic_coefficient(s);
  std::vector<double> carrier;
  double phase_lo = 0.0, phase_hi = 0.0;
  for (double u : linspace(x, x + decay, 20001)) {
    const double arg = k1 * u - k3 * u * u * u;
    carrier.push_back(std::pow(std::cos(arg), 2));
    if (carrier.size() == 1) phase_lo = arg;
    phase_hi = arg;
  }
  EXPECT_LT(std::abs(phase_hi - phase_lo) / pi, 1.0);
  EXPECT_LE(count_maxima(carrier), 1u);
}

TEST(CubicTerm, ReferenceExampleIsFourteenOrders) {
  const auto m = cubic_term_magnitude(reference(), 1e-4);
  EXPECT_NEAR(std::log10(m.ratio), 14.0, 1.0);
  EXPECT_NEAR(m.linear_coeff, 2 * pi * 0.5 * 2, 1e-12);
}

TEST(CubicTerm, TermRatioGrowsAsXShrinks) {
  double previous = 0.0;
  for (double x = 1e-2; x > 1e-8; x /= 3) {
    const double r = cubic_term_magnitude(reference(), x).term_ratio;
    EXPECT_GT(r, previous);
    previous = r;
  }
  EXPECT_TRUE(std::isinf(cubic_term_magnitude(reference(), 0.0).term_ratio));
}

TEST(CubicTerm, DoublingLScalesRatio) {
  const auto s = reference();
  auto t = s;
  t.distance = 2 * s.distance;
  const double r1 = cubic_term_magnitude(s, 1e-4).ratio;
  const double r2 = cubic_term_magnitude(t, 1e-4).ratio;
  const double predicted = r1 * 4 * (1 + 1 / t.beta()) / (1 + 1 / s.beta());
  EXPECT_NEAR(r2 / predicted, 1.0, 1e-9);
}

TEST(Model, NamesRoundTrip) {
  for (auto m : {Model::Noon, Model::Delta}) EXPECT_EQ(model_from_string(to_string(m)), m);
  EXPECT_THROW(model_from_string("boto"), InvalidArgument);
}
