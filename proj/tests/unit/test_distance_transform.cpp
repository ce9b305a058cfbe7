#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "landmap/detect/detector.hpp"
#include "landmap/detect/distance_transform.hpp"
#include "support/properties.hpp"

namespace lt = landmap::testing;

using namespace landmap::detect;

TEST(DistanceTransform, MatchesBruteForce) {
  const auto r = lt::distance_transform_brute_force(31, 200, 64);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(DistanceTransform, NoFeaturesIsInfinite) {
  const auto d = euclidean_distance(std::vector<std::uint8_t>(12, 0), 3, 4);
  for (double v : d) EXPECT_EQ(v, std::numeric_limits<double>::infinity());
}

TEST(DistanceTransform, SingleFeature) {
  std::vector<std::uint8_t> f(25, 0);
  f[2 * 5 + 1] = 1;
  const auto sq = squared_euclidean_distance(f, 5, 5);
  EXPECT_EQ(sq[2 * 5 + 1], 0.0);
  EXPECT_EQ(sq[0], 5.0);    // (2, 1) to (0, 0)
  EXPECT_EQ(sq[24], 13.0);  // (2, 1) to (4, 4)
  const auto d = euclidean_distance(f, 5, 5);
  EXPECT_DOUBLE_EQ(d[24], std::sqrt(13.0));
}

TEST(DistanceTransform, ClearanceInMeters) {
  std::vector<LandingClass> c(5 * 7, LandingClass::kSafe);
  c[0] = LandingClass::kHazard;
  const auto d = distance_transform(c, 5, 7, 0.1);
  EXPECT_EQ(d[0], 0.0);
  EXPECT_NEAR(d[6], 0.6, 1e-12);
  EXPECT_NEAR(d[4 * 7 + 6], std::hypot(0.4, 0.6), 1e-12);
}
