#include <benchmark/benchmark.h>

#include "eigenflat/builders.hpp"
#include "eigenflat/counting.hpp"

using namespace eigenflat;

namespace {

TranslationSurface d8_surface() {
  const Discriminant d(8);
  const Vec2 i{QuadNum(d), QuadNum(d, 1)};
  return eigenform_sampler(Prototype::parse("8:1,0,-2,0"), i, i);
}

}  // namespace

static void BM_SaddleConnectionsDecagon(benchmark::State& state) {
  const auto s = build_decagon();
  const QuadNum L_sq(s.disc(), state.range(0) * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_saddle_connections(s, L_sq));
}
BENCHMARK(BM_SaddleConnectionsDecagon)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CountD8(benchmark::State& state) {
  const auto s = d8_surface();
  const QuadNum L(s.disc(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_summary(s, L, SurfaceClass::generic_eigenform));
}
BENCHMARK(BM_CountD8)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_BilliardUnfolding(benchmark::State& state) {
  const Discriminant d(8);
  const QuadNum a = QuadNum::parse("1/2+1/2*sqrt(8)", d);
  const BilliardSpec spec{a, a, QuadNum(d, Rational(1, 2))};
  const QuadNum L(d, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(billiard_counts(spec, L));
}
BENCHMARK(BM_BilliardUnfolding)->Arg(20)->Unit(benchmark::kMillisecond);
