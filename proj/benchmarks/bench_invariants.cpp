#include <benchmark/benchmark.h>

#include "eigenflat/invariants.hpp"
#include "eigenflat/prototypes.hpp"

using namespace eigenflat;

static void BM_InvariantReport(benchmark::State& state) {
  const Discriminant d(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invariant_report(d));
}
BENCHMARK(BM_InvariantReport)->Arg(5)->Arg(45)->Arg(397);

static void BM_EnumeratePrototypes(benchmark::State& state) {
  const Discriminant d(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_prototypes(d));
}
BENCHMARK(BM_EnumeratePrototypes)->Arg(101)->Arg(400 - 3)->Arg(4001);

// The whole identity range at once.
static void BM_IdentitySweep(benchmark::State& state) {
  for (auto _ : state) {
    bool ok = true;
    for (const auto& d : discriminants_in_range(5, state.range(0))) {
      ok = ok && sum_v_check(d).passes && chi(d) == chi_via_inversion(d);
      for (const auto& c : triple_identities(d)) ok = ok && c.passes();
    }
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_IdentitySweep)->Arg(400)->Unit(benchmark::kMillisecond);
