#include <gtest/gtest.h>

#include <cmath>

#include "landmap/map/pyramid_map.hpp"
#include "landmap/sim/render.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

namespace lt = landmap::testing;

using namespace landmap;
using namespace landmap::map;

namespace {

MapConfig small_config() {
  MapConfig c;
  c.depth = 3;
  c.finest_resolution = 0.1;
  c.extent_cells = 16;
  return c;
}

struct WorldObs {
  double x, y, z, var;
  int target;
};

std::vector<WorldObs> random_observations(lt::Gen& g, double lo, double hi, int n) {
  std::vector<WorldObs> obs;
  for (int i = 0; i < n; ++i)
    obs.push_back({g.uniform(lo, hi), g.uniform(lo, hi), g.normal(0.0, 0.3), g.uniform(1e-4, 1e-2),
                   g.integer(1, 3)});
  return obs;
}

void apply_observations(PyramidMap& m, const std::vector<WorldObs>& obs) {
  for (const auto& o : obs)
    if (const auto c = m.locate(o.x, o.y)) m.observe(c->row, c->col, o.z, o.var, o.target, 1.0f);
}

}  // namespace

TEST(PyramidMap, ReconstructionIdentityProperty) {
  const auto r = lt::pyramid_reconstruction_identity(21, 40, 1e-6);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(PyramidMap, RollingBufferRoundTripProperty) {
  const auto r = lt::rolling_buffer_round_trip(22, 40);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(PyramidMap, MemoryOverheadBelowFourThirds) {
  const auto r = lt::memory_overhead();
  EXPECT_TRUE(r.ok) << r.detail;
  PyramidMap m(small_config());
  EXPECT_EQ(m.allocated_cells(), 256u + 64u + 16u);
  EXPECT_EQ(m.payload_bytes(), m.allocated_cells() * PyramidMap::kBytesPerCell);
}

TEST(PyramidMap, SingleMeasurementFillsEveryLayer) {
  PyramidMap m(small_config());
  m.observe(5, 9, 2.5, 0.01, 3, 4.0f);
  EXPECT_DOUBLE_EQ(m.cell(1, 1, 2).value, 2.5);
  EXPECT_DOUBLE_EQ(m.cell(2, 2, 4).value, 0.0);
  EXPECT_EQ(m.cell(3, 5, 9).observation_count, 1u);
  EXPECT_FLOAT_EQ(m.cell(3, 5, 9).last_update, 4.0f);
  const auto rec = m.reconstruct(5, 9, 3);
  ASSERT_TRUE(rec);
  EXPECT_DOUBLE_EQ(rec->height, 2.5);
  EXPECT_EQ(rec->resolved_level, 3);
  EXPECT_FALSE(m.reconstruct(0, 0, 3));
}

TEST(PyramidMap, CoarseOnlyMeasurementLeavesFinerLayersEmpty) {
  PyramidMap m(small_config());
  m.observe(0, 0, 1.0, 0.01, 1, 0.0f);
  m.observe(3, 3, 1.4, 0.01, 3, 0.0f);
  // layer 1 fuses both: (1.0 + 1.4) / 2, variances are stored as float
  EXPECT_NEAR(m.cell(1, 0, 0).value, 1.2, 1e-6);
  const auto a = m.reconstruct(0, 0, 3);
  ASSERT_TRUE(a);
  EXPECT_NEAR(a->height, 1.2, 1e-6);
  EXPECT_EQ(a->resolved_level, 1);
  const auto b = m.reconstruct(3, 3, 3);
  ASSERT_TRUE(b);
  EXPECT_NEAR(b->height, 1.4, 1e-6);
  EXPECT_EQ(b->resolved_level, 3);
}

TEST(PyramidMap, LocateAndContains) {
  PyramidMap m(small_config(), Vec2(-0.8, 1.0));
  EXPECT_TRUE(m.contains(-0.8, 1.0));
  EXPECT_FALSE(m.contains(0.8, 1.0));
  const auto c = m.locate(-0.75, 1.25);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->col, 0);
  EXPECT_EQ(c->row, 2);
  EXPECT_FALSE(m.locate(-0.81, 1.5));
  EXPECT_THROW(m.reconstruct_height(5.0, 5.0, 3), DomainError);
  EXPECT_THROW(m.cell(4, 0, 0), DomainError);
  EXPECT_THROW(m.cell(1, 4, 0), DomainError);
}

TEST(PyramidMap, ShiftMustBeCoarseMultiple) {
  PyramidMap m(small_config());
  EXPECT_THROW(m.shift(2, 0), DomainError);
  EXPECT_THROW(m.set_roll_offset(0, 3), DomainError);
  EXPECT_EQ(m.shift(4, -8), (Shift{4, -8}));
  EXPECT_NEAR(m.origin().x(), -0.8, 1e-12);
  EXPECT_NEAR(m.origin().y(), 0.4, 1e-12);
}

TEST(PyramidMap, ShiftedMapMatchesMapBuiltAtNewOrigin) {
  lt::Gen g(5);
  const auto cfg = small_config();
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 4 * g.integer(-3, 3);
    const int cols = 4 * g.integer(-3, 3);
    const auto obs = random_observations(g, -1.0, 2.6, 800);
    PyramidMap shifted(cfg);
    apply_observations(shifted, obs);
    shifted.shift(rows, cols);
    PyramidMap fresh(cfg, shifted.origin());
    // only observations inside the old extent reach the shifted map
    PyramidMap old(cfg);
    std::vector<WorldObs> kept;
    for (const auto& o : obs)
      if (old.contains(o.x, o.y) && old.locate(o.x, o.y)) kept.push_back(o);
    apply_observations(fresh, kept);
    for (int l = 1; l <= cfg.depth; ++l)
      for (int r = 0; r < cfg.cells(l); ++r)
        for (int c = 0; c < cfg.cells(l); ++c) {
          const auto a = shifted.cell(l, r, c);
          const auto b = fresh.cell(l, r, c);
          ASSERT_EQ(a.observation_count, b.observation_count) << l << " " << r << " " << c;
          if (a.observed()) {
            ASSERT_EQ(a.value, b.value);
            ASSERT_EQ(a.variance, b.variance);
          }
        }
  }
}

TEST(PyramidMap, RecenterKeepsCoverageInside) {
  const auto cfg = small_config();  // 1.6 m extent, 0.4 m coarse cells
  PyramidMap m = PyramidMap::centered_at(cfg, Vec2(0.0, 0.0));
  EXPECT_TRUE(m.recenter(Vec2(0.0, 0.0), Vec2(0.3, 0.3)).zero());
  const Shift s = m.recenter(Vec2(0.5, 0.0), Vec2(0.3, 0.3));
  EXPECT_FALSE(s.zero());
  EXPECT_EQ(s.rows, 0);
  EXPECT_EQ(s.cols % cfg.scale(1), 0);
  const double ext = cfg.extent_meters();
  EXPECT_LE(m.origin().x(), 0.5 - 0.3 - 0.4 + 1e-9);
  EXPECT_GE(m.origin().x() + ext, 0.5 + 0.3 + 0.4 - 1e-9);
  EXPECT_TRUE(m.recenter(Vec2(0.5, 0.0), Vec2(0.3, 0.3)).zero());
}

TEST(PyramidMap, FuseCountsUpdatesPerLayer) {
  sim::TerrainParams tp;
  tp.extent_x = 20;
  tp.extent_y = 20;
  tp.fractal_amplitude = 0.0;
  const auto terrain = sim::TerrainModel::generate(tp);
  CameraModel cam{90.0, 32, 32, 0.0, 0.8};
  Pose pose;
  pose.position = Vec3(10, 10, 2.0);
  pose.orientation = camera_orientation(0.0, 0.0);
  const auto img = sim::render_range_image(terrain, pose, cam, 1);

  MapConfig cfg;
  cfg.depth = 3;
  cfg.finest_resolution = 0.1;
  cfg.extent_cells = 64;
  PyramidMap m = PyramidMap::centered_at(cfg, Vec2(10, 10));
  // footprint 2 * 2 / 32 = 0.125 m: layer 2 (0.2 m) is the deepest coarse enough
  const auto stats = m.fuse(img, pose, cam);
  EXPECT_EQ(stats.point_updates[0], 1024u);
  EXPECT_EQ(stats.point_updates[1], 1024u);
  EXPECT_EQ(stats.point_updates[2], 0u);
  EXPECT_EQ(stats.cells_updated[1], 400u);  // 4 m wide footprint / 0.2 m
  EXPECT_EQ(stats.cells_updated[0], 100u);
  EXPECT_EQ(stats.rejected(), 0u);
  EXPECT_EQ(stats.total_point_updates(), 2048u);

  Pose away = pose;
  away.position = Vec3(18, 10, 2.0);
  const auto far_img = sim::render_range_image(terrain, away, cam, 1);
  const auto far_stats = m.fuse(far_img, away, cam);
  EXPECT_EQ(far_stats.rejected_out_of_map, 1024u);
}
