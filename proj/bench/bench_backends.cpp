#include <benchmark/benchmark.h>

#include <cmath>

#include "heatpot/transparent_bc.hpp"

using namespace heatpot;

namespace {

SourceField bump(int n) {
  if (n == 1) {
    return SourceField{[](const SpaceVec& x, double t) {
                         return std::exp(-x[0] * x[0] / 0.02) * (1.0 + t);
                       },
                       Box{SpaceVec(-0.6), SpaceVec(0.6)}, false};
  }
  return SourceField{[](const SpaceVec& x, double t) {
                       return std::exp(-x.norm2() / 0.02) * (1.0 + t);
                     },
                     Box{SpaceVec(-0.6, -0.6), SpaceVec(0.6, 0.6)}, false};
}

Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Backend::serial : Backend::openmp;
}

void volume_potential_2d(benchmark::State& state) {
  const Domain q{Rectangle{-1.0, 1.0, -1.0, 1.0}};
  const VolumeRule vrule = make_volume_rule(q, 8);
  const TimeRule trule = make_time_rule(0.25, 16);
  const SourceField f = bump(2);
  const PotentialOptions opts{backend_of(state)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(volume_potential({2, 2}, f, vrule, trule, SpaceVec(0.1, 0.2), 0.25, opts));
  }
}

void trace_extraction_1d(benchmark::State& state) {
  const Domain q{Interval{-1.0, 1.0}};
  const VolumeRule vrule = make_volume_rule(q, 16);
  const BoundaryRule brule = make_boundary_rule(q, 1);
  const TimeRule trule = make_time_rule(0.5, 16);
  const SourceField f = bump(1);
  const PotentialOptions opts{backend_of(state)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_traces({3, 1}, f, vrule, brule, trule, opts));
  }
}

void single_layer_2d(benchmark::State& state) {
  const Domain q{Disk{SpaceVec(0.0, 0.0), 1.0}};
  const BoundaryRule brule = make_boundary_rule(q, 16);
  const TimeRule trule = make_graded_time_rule(0.5, 16, 6);
  const BoundaryDensity density = BoundaryDensity::sample(
      brule, trule, [](std::size_t i, double t) { return (1.0 + 0.01 * static_cast<double>(i)) * t; });
  const PotentialOptions opts{backend_of(state)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_layer(1, density, brule, trule, SpaceVec(0.3, 0.2), 0.5, opts));
  }
}

}  // namespace

// Argument 0 is the serial reference, 1 the OpenMP backend.
BENCHMARK(volume_potential_2d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(trace_extraction_1d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(single_layer_2d)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
