#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "noonlith/biphoton.hpp"
#include "noonlith/fringes.hpp"
#include "noonlith/pattern_models.hpp"

using namespace noonlith;
using namespace noonlith::patterns;
using std::numbers::pi;

namespace {

SlitGeometry geometry() { return SlitGeometry::from_wavelength(1e-3, 0.0, 1.0, 1e-6); }

DetectorGrid fringe_grid(int detectors = 101, double fringes = 4.5) {
  return DetectorGrid::with_detectors(detectors,
                                      detector_width_for_fringes(geometry(), fringes, detectors));
}

}  // namespace

TEST(PhaseStep, DirectSubstitution) {
  const auto grid = DetectorGrid::with_detectors(101, 1e-5);
  EXPECT_NEAR(phase_step(geometry(), grid), pi * 1e-2, 1e-15);
}

TEST(PhaseStep, FringeCountIdentity) {
  EXPECT_NEAR(phase_step(geometry(), fringe_grid()), 4.5 * pi / 101, 1e-15);
}

TEST(PhaseStep, ZeroDetectorWidthIsRejected) {
  EXPECT_THROW(DetectorGrid::with_detectors(101, 0.0), InvalidArgument);
}

TEST(SinglePhotonPattern, MaximumAtCentreAndZeroAtQuarterPeriod) {
  // theta = pi / 4 puts s = 2 at theta s = pi / 2
  const auto g = geometry();
  const double b = pi / 4 * 2 * g.screen_distance / (g.wavenumber * g.separation);
  const auto p = single_photon_pattern(g, DetectorGrid::with_detectors(5, b));
  EXPECT_DOUBLE_EQ(p.values[2], 1.0);
  EXPECT_NEAR(p.values[0], 0.0, 1e-15);
  EXPECT_NEAR(p.values[4], 0.0, 1e-15);
}

TEST(SinglePhotonPattern, FourToFiveMaximaOnFourAndHalfFringes) {
  const auto n = count_maxima(single_photon_pattern(geometry(), fringe_grid()).values);
  EXPECT_GE(n, 4u);
  EXPECT_LE(n, 5u);
}

TEST(SinglePhotonPattern, Normalizations) {
  const auto p = single_photon_pattern(geometry(), fringe_grid(), Normalization::UnitSum);
  double sum = 0.0;
  for (double v : p.values) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(BotoCoincidence, OffDiagonalIsExactlyZero) {
  const auto m = boto_coincidence(geometry(), fringe_grid(41));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) {
        EXPECT_EQ(m.at(i, j), 0.0);
      }
  EXPECT_DOUBLE_EQ(m.at(20, 20), 1.0);
}

TEST(BotoCoincidence, NineDiagonalMaxima) {
  EXPECT_EQ(count_maxima(boto_coincidence(geometry(), fringe_grid()).diagonal()), 9u);
}

TEST(SteuernagelCoincidence, AntiDiagonalIsMaximal) {
  const auto m = steuernagel_coincidence(geometry(), fringe_grid(41));
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m.at(i, m.size() - 1 - i), 1.0, 1e-15);
}

TEST(SteuernagelCoincidence, DiagonalMatchesBoto) {
  for (auto norm : {Normalization::UnitMax}) {
    const auto s = steuernagel_coincidence(geometry(), fringe_grid(), norm).diagonal();
    const auto b = boto_coincidence(geometry(), fringe_grid(), norm).diagonal();
    EXPECT_LE(max_abs_difference(s, b), 1e-12);
  }
}

TEST(SteuernagelCoincidence, NineDiagonalMaxima) {
  EXPECT_EQ(count_maxima(steuernagel_coincidence(geometry(), fringe_grid()).diagonal()), 9u);
}

TEST(SteuernagelCoincidence, MatchesPropagatedNoonMap) {
  const auto s = steuernagel_coincidence(geometry(), fringe_grid(61));
  const auto n = biphoton::noon_map(geometry(), fringe_grid(61));
  EXPECT_LE(max_abs_difference(s.values, n.values), 1e-9);
}

TEST(CoincidenceMaps, ExchangeSymmetricBeforeNormalization) {
  const auto s = steuernagel_coincidence(geometry(), fringe_grid(51, 3.7));
  EXPECT_LE(s.asymmetry(), 1e-12);
  EXPECT_LE(boto_coincidence(geometry(), fringe_grid(51, 3.7)).asymmetry(), 1e-12);
}

// Diagonal maxima are twice the number of single-photon fringes spanned.
TEST(CoincidenceMaps, PeriodHalvingOnHalfIntegerGrids) {
  for (double fringes : {2.5, 3.5, 4.5, 6.5}) {
    const auto grid = fringe_grid(201, fringes);
    const auto diag = count_maxima(boto_coincidence(geometry(), grid).diagonal());
    EXPECT_EQ(static_cast<double>(diag), 2 * fringes) << fringes;
  }
}

TEST(ExposureScalingLaw, WorkedExampleRatios) {
  EXPECT_NEAR(exposure_scaling_law(Model::Steuernagel, 25, 3) /
                  exposure_scaling_law(Model::Steuernagel, 25, 2),
              25.0, 1e-12);
  EXPECT_NEAR(exposure_scaling_law(Model::Steuernagel, 10000, 3) /
                  exposure_scaling_law(Model::Steuernagel, 10000, 2),
              1e4, 1e-6);
  EXPECT_EQ(exposure_scaling_law(Model::Boto, 25, 3) / exposure_scaling_law(Model::Boto, 25, 2),
            1.0);
}

TEST(ExposureScalingLaw, RejectsZero) {
  EXPECT_THROW(exposure_scaling_law(Model::Boto, 0, 2), InvalidArgument);
  EXPECT_THROW(exposure_scaling_law(Model::Steuernagel, 4, 0), InvalidArgument);
}

TEST(Model, NamesRoundTrip) {
  for (auto m : {Model::Boto, Model::Steuernagel}) EXPECT_EQ(model_from_string(to_string(m)), m);
}
