#include <gtest/gtest.h>

#include <cmath>

#include "landmap/map/lod.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

namespace lt = landmap::testing;

using namespace landmap;
using namespace landmap::map;

TEST(CellIndex, MatchesFloorDivisionOracle) {
  const auto r = lt::cell_index_brute_force(5, 4096);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_GT(r.cases, 0);
}

TEST(CellIndex, NegativeIndicesRoundDown) {
  EXPECT_EQ(cell_index(-1, 1, 3), -1);
  EXPECT_EQ(cell_index(-4, 1, 3), -1);
  EXPECT_EQ(cell_index(-5, 1, 3), -2);
  EXPECT_EQ(cell_index(7, 2, 3), 3);
  EXPECT_EQ(cell_index(7, 3, 3), 7);
  EXPECT_THROW(cell_index(0, 0, 3), DomainError);
  EXPECT_THROW(cell_index(0, 4, 3), DomainError);
}

TEST(PixelFootprint, MatchesGeometry) {
  CameraModel cam{90.0, 640, 480, 0.25, 0.8};
  // 2 * 10 m * tan(45 deg) / 640 px
  EXPECT_NEAR(pixel_footprint(12.0, 2.0, cam), 20.0 / 640.0, 1e-12);
  cam.fov_x_deg = 60.0;
  cam.image_width = 320;
  EXPECT_NEAR(pixel_footprint(5.0, 0.0, cam), 10.0 * std::tan(kPi / 6.0) / 320.0, 1e-12);
  EXPECT_THROW(pixel_footprint(1.0, 1.0, cam), FootprintError);
  EXPECT_THROW(pixel_footprint(1.0, 2.0, cam), FootprintError);
}

TEST(TargetLevel, DeepestLayerAtLeastAsCoarseAsFootprint) {
  MapConfig c;
  c.depth = 3;
  c.finest_resolution = 0.08;
  EXPECT_EQ(target_level(0.01, c), 3);
  EXPECT_EQ(target_level(0.08, c), 3);
  EXPECT_EQ(target_level(0.0801, c), 2);
  EXPECT_EQ(target_level(0.16, c), 2);
  EXPECT_EQ(target_level(0.2, c), 1);
  EXPECT_EQ(target_level(5.0, c), 1);
}

TEST(TargetLevel, PropertyAgainstLinearScan) {
  lt::Gen g(11);
  for (int t = 0; t < 2000; ++t) {
    MapConfig c;
    c.depth = g.integer(1, 6);
    c.finest_resolution = g.uniform(0.01, 0.5);
    const double p = std::exp(g.uniform(std::log(1e-3), std::log(20.0)));
    int expected = 1;
    for (int l = 1; l <= c.depth; ++l)
      if (c.resolution(l) >= p) expected = l;
    ASSERT_EQ(target_level(p, c), expected) << "depth " << c.depth << " p " << p;
  }
}

TEST(MeasurementVariance, StereoDepthError) {
  // sigma_z = 10^2 * 0.1 / (4 * 320)
  const double s = 100.0 * 0.1 / (4.0 * 320.0);
  EXPECT_NEAR(measurement_variance(10.0, 4.0, 320.0, 0.1), s * s, 1e-15);
  EXPECT_NEAR(measurement_variance(10.0, 4.0, 320.0, 0.1, 0.5), 0.25 * s * s, 1e-15);
  EXPECT_THROW(measurement_variance(10.0, 0.0, 320.0, 0.1), NumericError);
  EXPECT_THROW(measurement_variance(-1.0, 4.0, 320.0, 0.1), NumericError);
}

TEST(Kalman, InverseVarianceUpdate) {
  const auto e = kalman_update({1.0, 1.0}, {3.0, 3.0});
  EXPECT_NEAR(e.value, 1.5, 1e-12);
  EXPECT_NEAR(e.variance, 0.75, 1e-12);
  EXPECT_THROW(kalman_update({0.0, 0.0}, {1.0, 1.0}), NumericError);
  EXPECT_THROW(kalman_update({0.0, 1.0}, {1.0, -1.0}), NumericError);
}

TEST(Kalman, SequentialEqualsBatch) {
  const auto r = lt::kalman_batch_equivalence(3, 500, 1e-9);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(MapConfig, Validation) {
  MapConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.cells(1), 50);
  EXPECT_NEAR(c.resolution(1), 0.32, 1e-12);
  EXPECT_EQ(c.total_cells(), 200u * 200u + 100u * 100u + 50u * 50u);
  c.extent_cells = 202;
  EXPECT_THROW(c.validate(), ConfigError);
  c.extent_cells = 200;
  c.depth = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}
