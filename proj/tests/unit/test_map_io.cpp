#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "landmap/map/map_io.hpp"
#include "landmap/pgm.hpp"
#include "support/generators.hpp"

namespace lt = landmap::testing;

using namespace landmap;
using namespace landmap::map;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::path(LANDMAP_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(MapIo, SaveLoadRoundTripIsBitExact) {
  lt::Gen g(8);
  for (int t = 0; t < 6; ++t) {
    const auto cfg = lt::random_map_config(g, 4, 8, 64);
    auto m = lt::random_scene_map(g, cfg);
    const int s = cfg.scale(1);
    m.shift(s * g.integer(-2, 2), s * g.integer(-2, 2));
    const auto dir = scratch("map_io_" + std::to_string(t));
    save_map(m, dir);
    const auto back = load_map(dir);
    // the dump keeps value, variance and count; update times are not stored
    EXPECT_EQ(back.origin(), m.origin());
    EXPECT_EQ(back.roll_offset(), m.roll_offset());
    for (int l = 1; l <= cfg.depth; ++l)
      for (int r = 0; r < cfg.cells(l); ++r)
        for (int c = 0; c < cfg.cells(l); ++c) {
          const auto a = m.cell(l, r, c);
          const auto b = back.cell(l, r, c);
          ASSERT_EQ(a.observation_count, b.observation_count) << t;
          if (!a.observed()) continue;
          ASSERT_EQ(a.value, b.value) << t;
          ASSERT_EQ(a.variance, b.variance) << t;
        }
  }
}

TEST(MapIo, MissingOrCorruptFilesAreFormatErrors) {
  EXPECT_THROW(load_map(scratch("map_io_empty")), FormatError);

  MapConfig cfg;
  cfg.depth = 2;
  cfg.extent_cells = 8;
  PyramidMap m(cfg);
  m.observe(1, 1, 0.5, 0.01, 2, 0.0f);
  const auto dir = scratch("map_io_corrupt");
  save_map(m, dir);
  std::ofstream(dir / "layer_2.csv", std::ios::app) << "1,2,not-a-number\n";
  EXPECT_THROW(load_map(dir), FormatError);

  std::ofstream(dir / "header.json") << "{ \"depth\": ";
  EXPECT_THROW(load_map(dir), FormatError);
}

TEST(MapIo, LayerImagesCoverEveryLayer) {
  MapConfig cfg;
  cfg.depth = 3;
  cfg.extent_cells = 16;
  PyramidMap m(cfg);
  m.observe(0, 0, 1.0, 0.01, 3, 0.0f);
  m.observe(15, 15, 3.0, 0.01, 3, 0.0f);
  const auto dir = scratch("map_io_pgm");
  export_layer_images(m, dir);
  for (int l = 1; l <= 3; ++l) {
    const auto img = read_pgm(dir / ("layer_" + std::to_string(l) + ".pgm"));
    EXPECT_EQ(img.width, cfg.cells(l));
    EXPECT_EQ(img.maxval, 65535);
    const auto mask = read_pgm(dir / ("layer_" + std::to_string(l) + "_mask.pgm"));
    int observed = 0;
    for (auto p : mask.pixels) observed += p == 255;
    EXPECT_EQ(observed, 2) << l;
    EXPECT_EQ(mask.pixels.front(), 255);
    EXPECT_EQ(mask.pixels.back(), 255);
  }
}

TEST(Pgm, RoundTrip) {
  PgmImage img;
  img.width = 3;
  img.height = 2;
  img.maxval = 65535;
  img.pixels = {0, 1, 256, 65535, 4242, 7};
  img.comments = {"scale 0.5 2.5"};
  const auto path = scratch("pgm") / "a.pgm";
  write_pgm(img, path);
  const auto back = read_pgm(path);
  EXPECT_EQ(back.width, 3);
  EXPECT_EQ(back.height, 2);
  EXPECT_EQ(back.pixels, img.pixels);
  ASSERT_EQ(back.comments.size(), 1u);
  EXPECT_EQ(back.comments[0], "scale 0.5 2.5");

  img.maxval = 255;
  img.pixels = {0, 10, 20, 30, 40, 255};
  write_pgm(img, path);
  EXPECT_EQ(read_pgm(path).pixels, img.pixels);

  std::ofstream(path, std::ios::trunc) << "P2\n1 1\n255\n0\n";
  EXPECT_THROW(read_pgm(path), FormatError);
}

