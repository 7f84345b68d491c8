#include "otcalc/cohomology.hpp"
#include "otcalc/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace otcalc;

static void BM_ComputePreset(benchmark::State& state, const char* name) {
  const RunConfig config = preset_config(name);
  for (auto _ : state) benchmark::DoNotOptimize(run_compute(config));
}
BENCHMARK_CAPTURE(BM_ComputePreset, inoue_cubic, "inoue-cubic")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ComputePreset, quartic_s2, "quartic-s2")->Unit(benchmark::kMillisecond);

static void BM_Embeddings(benchmark::State& state) {
  const FieldSpec f = parse_field({-1, -3, 3, 2, -3, 0, 1});
  const auto bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_embeddings(f, bits, 1u << 14));
}
BENCHMARK(BM_Embeddings)->Arg(128)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_ExactTables(benchmark::State& state) {
  const auto cs = synthetic_structure_s1(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CohomologyCalculator<ExactScalar> calc(cs);
    benchmark::DoNotOptimize(calc.dolbeault_table());
    benchmark::DoNotOptimize(calc.bott_chern_table());
  }
}
BENCHMARK(BM_ExactTables)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_NumericTables(benchmark::State& state) {
  const auto exact = synthetic_structure_s1(static_cast<int>(state.range(0)));
  std::vector<std::vector<NumericScalar>> psi;
  for (const auto& row : exact.psi()) psi.push_back({NumericScalar(row[0].re.get_d(), row[0].im.get_d())});
  const ComplexStructure<NumericScalar> cs(static_cast<int>(state.range(0)), 1, psi);
  for (auto _ : state) {
    CohomologyCalculator<NumericScalar> calc(cs);
    benchmark::DoNotOptimize(calc.dolbeault_table());
    benchmark::DoNotOptimize(calc.bott_chern_table());
  }
}
BENCHMARK(BM_NumericTables)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
