#include <benchmark/benchmark.h>

#include "shimura/classify.hpp"
#include "shimura/kernels.hpp"
#include "shimura/orbitrep.hpp"

using namespace shimura;

namespace {

PermGroup cyclic(std::size_t n) {
  std::vector<Point> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Point>((i + 1) % n);
  return PermGroup(n, {Permutation(images)});
}

PermGroup dihedral(std::size_t n) {
  std::vector<Point> reflection(n);
  for (std::size_t i = 0; i < n; ++i) reflection[i] = static_cast<Point>((n - i) % n);
  std::vector<Point> rotation(n);
  for (std::size_t i = 0; i < n; ++i) rotation[i] = static_cast<Point>((i + 1) % n);
  return PermGroup(n, {Permutation(rotation), Permutation(reflection)});
}

void BM_FlagsByMarking(benchmark::State& state) {
  const auto g = dihedral(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_subset_flags_by_marking(g));
}

void BM_FlagsSerial(benchmark::State& state) {
  const auto g = dihedral(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_subset_flags(g, Execution::Serial));
}

void BM_FlagsParallel(benchmark::State& state) {
  const auto g = dihedral(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_subset_flags(g, Execution::Parallel));
}

void BM_EnumerateOrbits(benchmark::State& state) {
  const TotallyRealModel f(dihedral(static_cast<std::size_t>(state.range(0))));
  const auto exec = state.range(1) ? Execution::Parallel : Execution::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_orbits(f, true, exec));
}

void BM_Catalog(benchmark::State& state) {
  const QuaternionData d{TotallyRealModel(cyclic(5)), 0, {}};
  CMModel e{cyclic(10), Permutation({5, 6, 7, 8, 9, 0, 1, 2, 3, 4})};
  auto datum = std::make_shared<CMDatum>(CMDatum::make(std::move(e), SubfieldMap::singletons(5), Subset{0b01110}));
  const std::vector<CorpusEntry> corpus{
      {"decic", datum, all_partial_cm_types(*datum), {CaseFlag::Split, CaseFlag::NonSplit}}};
  CatalogOptions opts;
  opts.g_max = 80;
  opts.exec = state.range(0) ? Execution::Parallel : Execution::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(catalog(d, corpus, opts));
}

}  // namespace

BENCHMARK(BM_FlagsByMarking)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_FlagsSerial)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_FlagsParallel)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_EnumerateOrbits)->Args({16, 0})->Args({16, 1});
BENCHMARK(BM_Catalog)->Arg(0)->Arg(1);
BENCHMARK_MAIN();
