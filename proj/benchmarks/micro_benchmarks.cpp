#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "landmap/detect/detector.hpp"
#include "landmap/detect/distance_transform.hpp"
#include "landmap/eval/benchmark.hpp"
#include "landmap/map/pyramid_map.hpp"
#include "landmap/sim/flight.hpp"

namespace {

using namespace landmap;

struct Scene {
  eval::BenchmarkConfig config = [] {
    eval::BenchmarkConfig c;
    c.frames = 8;
    return c;
  }();
  sim::TerrainModel terrain;
  std::vector<sim::Frame> frames;

  Scene() : terrain(sim::TerrainModel::generate(eval::benchmark_terrain(config))) {
    const auto plan = eval::benchmark_plan(config, terrain);
    sim::FlightSimulator flight(terrain, plan, config.camera, split_seed(config.seed, "flight-noise"));
    for (int k = 0; k < config.frames; ++k) frames.push_back(flight.render(static_cast<std::size_t>(k)));
  }
};

const Scene& scene() {
  static const Scene s;
  return s;
}

void BM_Fuse(benchmark::State& state) {
  const auto& s = scene();
  const auto& f = s.frames.front();
  for (auto _ : state) {
    state.PauseTiming();
    auto m = map::PyramidMap::centered_at(s.config.map, f.pose.position.head<2>());
    state.ResumeTiming();
    auto stats = m.fuse(f.image, f.pose, s.config.camera);
    benchmark::DoNotOptimize(stats);
  }
}
BENCHMARK(BM_Fuse)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
  const auto& s = scene();
  auto m = map::PyramidMap::centered_at(s.config.map, s.frames.front().pose.position.head<2>());
  for (const auto& f : s.frames) map::integrate_frame(m, f.image, f.pose, s.config.camera);
  detect::DetectOptions opt;
  opt.prune = state.range(0) != 0;
  for (auto _ : state) {
    auto landing = detect::detect(m, s.config.landing, opt);
    benchmark::DoNotOptimize(landing);
  }
}
BENCHMARK(BM_Detect)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_Render(benchmark::State& state) {
  const auto& s = scene();
  CameraModel cam = s.config.camera;
  cam.image_width = static_cast<int>(state.range(0));
  cam.image_height = cam.image_width * 3 / 4;
  const auto& pose = s.frames.front().pose;
  for (auto _ : state) {
    auto image = sim::render_range_image(s.terrain, pose, cam, 7);
    benchmark::DoNotOptimize(image);
  }
}
BENCHMARK(BM_Render)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);

void BM_EDT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::bernoulli_distribution hit(0.02);
  std::vector<std::uint8_t> feature(static_cast<std::size_t>(n) * n);
  for (auto& f : feature) f = hit(rng) ? 1 : 0;
  for (auto _ : state) {
    auto d = detect::euclidean_distance(feature, n, n);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_EDT)->Arg(200)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
