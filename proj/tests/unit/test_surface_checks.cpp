#include <gtest/gtest.h>

#include <cmath>

#include "landmap/detect/surface_checks.hpp"
#include "support/generators.hpp"

using namespace landmap;
using namespace landmap::detect;
using landmap::map::MapConfig;
using landmap::map::PyramidMap;

namespace {

MapConfig config() {
  MapConfig c;
  c.depth = 3;
  c.finest_resolution = 0.05;
  c.extent_cells = 64;
  return c;
}

PyramidMap surface_map(const std::function<double(double, double)>& height) {
  return landmap::testing::exact_surface_map(config(), height);
}

}  // namespace

TEST(DiscOffsets, MatchesBruteForce) {
  for (double u : {0.0, 0.5, 3.25, -1.7}) {
    for (double rad : {0.3, 1.0, 2.5, 4.0}) {
      const auto offs = disc_offsets(u, 2.0 * u + 0.1, rad);
      const double v = 2.0 * u + 0.1;
      std::size_t expected = 0;
      for (int r = -20; r <= 20; ++r)
        for (int c = -20; c <= 20; ++c) {
          const double dx = std::floor(u) + c + 0.5 - u;
          const double dy = std::floor(v) + r + 0.5 - v;
          if (dx * dx + dy * dy <= rad * rad) ++expected;
        }
      EXPECT_EQ(offs.size(), expected) << u << " " << rad;
      for (const auto& o : offs) EXPECT_LE(o.dx * o.dx + o.dy * o.dy, rad * rad + 1e-12);
    }
  }
}

TEST(FitPlane, RecoversFiveDegreeSlope) {
  const double g = std::tan(deg2rad(5.0));
  const auto m = surface_map([g](double x, double y) { return g * (0.6 * x + 0.8 * y) + 1.0; });
  for (int level = 1; level <= 3; ++level) {
    const auto fit = fit_plane(m, Vec2(1.6, 1.6), 0.6, level);
    ASSERT_TRUE(fit) << level;
    EXPECT_NEAR(fit->slope_deg, 5.0, 0.1) << level;
    EXPECT_NEAR(fit->height(1.6, 1.6), 1.0 + g * 1.6 * 1.4, 1e-6);
    EXPECT_LT(fit->rms, 1e-6);
  }
}

TEST(FitPlane, CollinearOrEmptySupportIsRejected) {
  const auto cfg = config();
  PyramidMap m(cfg);
  // coarse-only measurements along one row: a single row of layer-1 cells
  for (int c = 0; c < cfg.extent_cells; ++c) m.observe(32, c, 0.1 * c, 1e-4, 1, 0.0f);
  EXPECT_FALSE(fit_plane(m, Vec2(1.6, 1.7), 0.5, 1));
  EXPECT_TRUE(fit_plane(m, Vec2(1.6, 1.7), 0.5, 3));
  PyramidMap empty(cfg);
  EXPECT_FALSE(fit_plane(empty, Vec2(1.6, 1.6), 0.5, 3));
  EXPECT_FALSE(roughness(empty, Vec2(1.6, 1.6), 0.5, 3, PlaneFit{}).known());
}

TEST(Roughness, HalfSphereProtrudesByItsHeight) {
  const double radius = 0.3;
  const Vec2 rock(1.61, 1.58);
  auto bump = [&](double x, double y) {
    const double d2 = (x - rock.x()) * (x - rock.x()) + (y - rock.y()) * (y - rock.y());
    return d2 < radius * radius ? std::sqrt(radius * radius - d2) : 0.0;
  };
  const auto m = surface_map(bump);
  double expected = 0.0;
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) {
      const Vec2 p = m.cell_center(3, r, c);
      if ((p - rock).norm() <= 0.5) expected = std::max(expected, bump(p.x(), p.y()));
    }
  PlaneFit ground;
  ground.anchor = rock;
  const auto rough = roughness(m, rock, 0.5, 3, ground);
  ASSERT_TRUE(rough.known());
  EXPECT_NEAR(rough.value, expected, 1e-9);
  EXPECT_GT(rough.value, 0.29);
}

TEST(SurfaceView, CoarseLevelsHoldLayerHeights) {
  const auto m = surface_map([](double x, double) { return x; });
  const SurfaceView view(m);
  EXPECT_EQ(view.cells(1), 16);
  EXPECT_NEAR(view.resolution(1), 0.2, 1e-12);
  // layer 1 averages the 4 x 4 fine cells: their mean x is the coarse center
  EXPECT_NEAR(view.height(1, 0, 0), 0.1, 1e-9);
  EXPECT_NEAR(view.height(3, 5, 7), 7.5 * 0.05, 1e-9);
  PyramidMap empty(config());
  EXPECT_TRUE(std::isnan(SurfaceView(empty).height(2, 0, 0)));
}
