#include <benchmark/benchmark.h>

#include "cradon/boundary.hpp"
#include "cradon/forward.hpp"
#include "cradon/phantom.hpp"
#include "cradon/radon_core.hpp"
#include "cradon/symmetrize.hpp"

using namespace cradon;

namespace {

void BM_CircularMean(benchmark::State& state) {
  const Phantom ph = default_phantom_2d();
  const Vec3 y{5.0, 0.0, 0.0};
  double r = 4.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(circular_mean(ph, y, r));
    r = (r == 4.4) ? 4.7 : 4.4;
  }
}
BENCHMARK(BM_CircularMean);

void BM_SphericalMean(benchmark::State& state) {
  const Phantom ph = default_phantom_3d();
  const Vec3 y{3.0, 2.0, 0.0};
  double r = 3.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherical_mean(ph, y, r));
    r = (r == 3.1) ? 3.4 : 3.1;
  }
}
BENCHMARK(BM_SphericalMean);

void BM_OddExtendEval(benchmark::State& state) {
  const Geometry geom = Geometry::sector2d(static_cast<int>(state.range(0)));
  const FieldEvaluator f = odd_extend(phantom_field(default_phantom_2d()), geom);
  const Vec3 x{0.31, 0.22, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(f(x));
}
BENCHMARK(BM_OddExtendEval)->Arg(2)->Arg(3)->Arg(5);

void BM_Synthesize2D(benchmark::State& state) {
  const Phantom ph = default_phantom_2d();
  const Geometry geom = Geometry::sector2d(3);
  const BoundaryGrid grid = build_boundary_grid(geom, 20.0, 0.02, 2.0, 1.02);
  SynthesisParams sp;
  sp.dt = 0.02;
  sp.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_boundary_data(ph, grid, sp));
}
BENCHMARK(BM_Synthesize2D)->Unit(benchmark::kMillisecond);

void BM_ReconstructProjection2D(benchmark::State& state) {
  const Phantom ph = default_phantom_2d();
  const Geometry geom = Geometry::sector2d(3);
  const BoundaryGrid grid = build_boundary_grid(geom, 20.0, 0.02, 2.0, 1.02);
  SynthesisParams sp;
  sp.dt = 0.02;
  sp.threads = 1;
  const BoundarySignal data = synthesize_boundary_data(ph, grid, sp);
  const Vec3 w = unit2d(0.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(reconstruct_projection(data, w, -0.5));
}
BENCHMARK(BM_ReconstructProjection2D);

void BM_OracleProjection2D(benchmark::State& state) {
  const Phantom ph = default_phantom_2d();
  const Geometry geom = Geometry::sector2d(3);
  const Vec3 w = unit2d(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(odd_phantom_projection(ph, geom, w, -0.5));
}
BENCHMARK(BM_OracleProjection2D);

}  // namespace

BENCHMARK_MAIN();
