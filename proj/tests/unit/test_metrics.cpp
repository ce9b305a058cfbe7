#include <gtest/gtest.h>

#include <cmath>

#include "landmap/eval/metrics.hpp"
#include "landmap/map/lod.hpp"
#include "support/generators.hpp"

using namespace landmap;
using namespace landmap::eval;
using detect::LandingClass;
using detect::LandingMap;

namespace {

sim::TerrainModel rocky_terrain(double slope = 0.0) {
  sim::TerrainParams p;
  p.extent_x = 6;
  p.extent_y = 6;
  p.slope_deg = slope;
  p.fractal_amplitude = 0.0;
  p.rock_diameter = 0.4;
  p.rock_coverage = 0.03;
  p.seed = 17;
  return sim::TerrainModel::generate(p);
}

LandingMap grid_over(const sim::TerrainModel& t, double res, LandingClass fill) {
  LandingMap m;
  m.rows = m.cols = static_cast<int>(std::lround(t.params().extent_x / res));
  m.resolution = res;
  m.classes.assign(static_cast<std::size_t>(m.rows) * m.cols, fill);
  m.distance.assign(m.classes.size(), 0.0);
  return m;
}

// Cells whose square touches the disc, from an oversampled point test.
bool touches(const LandingMap& m, int r, int c, const sim::Rock& rock) {
  for (int j = 0; j <= 40; ++j)
    for (int i = 0; i <= 40; ++i) {
      const double x = (c + i / 40.0) * m.resolution;
      const double y = (r + j / 40.0) * m.resolution;
      if (std::hypot(x - rock.x, y - rock.y) < rock.radius - 1e-9) return true;
    }
  return false;
}

}  // namespace

TEST(TruthLabels, KeepoutAroundRocksAndSteepSlope) {
  const auto t = rocky_terrain();
  ASSERT_FALSE(t.rocks().empty());
  const auto& rock = t.rocks().front();
  TruthConfig truth;
  EXPECT_TRUE(truth_hazard(t, rock.x, rock.y, truth));
  EXPECT_TRUE(truth_hazard(t, rock.x + rock.radius + 0.29, rock.y, truth) ||
              rock.x + rock.radius + 0.29 > t.params().extent_x);
  const auto steep = rocky_terrain(12.0);
  EXPECT_TRUE(truth_hazard(steep, 0.01, 0.01, truth));
}

TEST(LandingMetrics, CountsMatchBruteForceOracle) {
  const auto t = rocky_terrain();
  auto m = grid_over(t, 0.1, LandingClass::kSafe);
  // mark a pseudo-random half of the cells hazardous, a band as BORDER
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      auto& cls = m.classes[static_cast<std::size_t>(r) * m.cols + c];
      if (r < 3) cls = LandingClass::kBorder;
      else if ((r * 7 + c * 13) % 5 < 2) cls = LandingClass::kHazard;
    }
  TruthConfig truth;
  const auto got = landing_metrics(m, t, truth);
  std::size_t evaluated = 0, correct = 0, hazards = 0, false_safe = 0;
  for (int r = 3; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      const Vec2 w = m.cell_center(r, c);
      const bool h = truth_hazard(t, w.x(), w.y(), truth);
      const bool p = m.at(r, c) != LandingClass::kSafe;
      ++evaluated;
      correct += h == p;
      hazards += h;
      false_safe += h && !p;
    }
  EXPECT_EQ(got.evaluated_cells, evaluated);
  EXPECT_EQ(got.correct_cells, correct);
  EXPECT_EQ(got.true_hazard_cells, hazards);
  EXPECT_EQ(got.false_safe_cells, false_safe);
  ASSERT_TRUE(got.recall());
  EXPECT_DOUBLE_EQ(*got.recall(), static_cast<double>(correct) / evaluated);
}

TEST(LandingMetrics, RockDetectedOnlyWhenEveryTouchedCellIsNonSafe) {
  const auto t = rocky_terrain();
  const auto& rock = t.rocks().front();
  auto m = grid_over(t, 0.1, LandingClass::kSafe);
  std::vector<std::size_t> footprint;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (touches(m, r, c, rock)) footprint.push_back(static_cast<std::size_t>(r) * m.cols + c);
  ASSERT_FALSE(footprint.empty());
  for (auto i : footprint) m.classes[i] = LandingClass::kHazard;

  auto outcome = [&]() -> std::optional<bool> {
    for (const auto& o : landing_metrics(m, t, TruthConfig{}).rocks)
      if (o.rock == 0) return o.detected;
    return std::nullopt;
  };
  EXPECT_EQ(outcome(), std::optional<bool>(true));
  m.classes[footprint.back()] = LandingClass::kSafe;
  EXPECT_EQ(outcome(), std::optional<bool>(false));
  m.classes[footprint.back()] = LandingClass::kUnknown;
  EXPECT_EQ(outcome(), std::optional<bool>(true));
  m.classes[footprint.front()] = LandingClass::kBorder;
  EXPECT_EQ(outcome(), std::nullopt);
}

TEST(LandingMetrics, RatesAreAbsentWithoutDenominators) {
  LandingMetrics m;
  EXPECT_FALSE(m.recall());
  EXPECT_FALSE(m.detection_rate());
  EXPECT_FALSE(m.false_positive_rate());
  LandingMetrics a;
  a.evaluated_cells = 10;
  a.correct_cells = 9;
  a.rocks_visible = 2;
  a.rocks_detected = 1;
  m += a;
  m += a;
  EXPECT_DOUBLE_EQ(*m.recall(), 0.9);
  EXPECT_DOUBLE_EQ(*m.detection_rate(), 0.5);
}

TEST(MapRmse, ExactMapHasZeroError) {
  const auto t = rocky_terrain();
  map::MapConfig cfg;
  cfg.depth = 2;
  cfg.finest_resolution = 0.1;
  cfg.extent_cells = 60;
  const auto m = landmap::testing::exact_surface_map(cfg, [&](double x, double y) { return t.height(x, y); });
  const auto b = map_rmse(m, t);
  ASSERT_TRUE(b.total);
  EXPECT_NEAR(*b.total, 0.0, 1e-9);
  EXPECT_EQ(b.flat_cells + b.rock_cells, 3600u);
  EXPECT_FALSE(b.cliff);
  // through layer 1 only, rock cells are smoothed away and carry the error
  const auto coarse = map_rmse(m, t, 1);
  EXPECT_GT(*coarse.rock, *coarse.flat);
}

TEST(MeanStd, SampleStatistics) {
  const auto s = mean_std({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_EQ(mean_std({}).n, 0u);
}
