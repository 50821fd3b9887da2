#include <benchmark/benchmark.h>

#include "cbd/coupling.hpp"
#include "cbd/cyclic.hpp"
#include "cbd/decision.hpp"
#include "cbd/deterministic.hpp"
#include "cbd/gallery.hpp"
#include "random_systems.hpp"

using namespace cbd;

namespace {

const char* const kGallery[] = {"kcbs", "epr-bb", "szlg", "magic-boxes"};

void BM_DecideGallery(benchmark::State& state) {
  const System s = std::get<System>(build(kGallery[state.range(0)]));
  const Mode mode = state.range(1) ? Mode::traditional : Mode::cbd;
  state.SetLabel(kGallery[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(decide(s, mode));
}
BENCHMARK(BM_DecideGallery)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CyclicFormula(benchmark::State& state) {
  testkit::Rng rng(7);
  const System s = testkit::random_cyclic_system(rng, static_cast<std::size_t>(state.range(0)), true);
  const auto a = *detect_cyclic(s);
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_contextuality(s, a));
}
BENCHMARK(BM_CyclicFormula)->DenseRange(2, 10, 2);

void BM_DecideCyclic(benchmark::State& state) {
  testkit::Rng rng(7);
  const System s = testkit::random_cyclic_system(rng, static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(decide(s, Mode::cbd));
}
BENCHMARK(BM_DecideCyclic)->DenseRange(2, 8, 1)->Unit(benchmark::kMillisecond);

// Fixed pool of random systems, cycled.
void BM_DecideRandom(benchmark::State& state) {
  testkit::Rng rng(11);
  std::vector<System> pool;
  for (int i = 0; i < 32; ++i) pool.push_back(testkit::random_system(rng, static_cast<std::size_t>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide(pool[i++ % pool.size()], Mode::cbd));
}
BENCHMARK(BM_DecideRandom)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ConstructMultimaximal(benchmark::State& state) {
  testkit::Rng rng(3);
  const Connection c = testkit::random_connection(rng, static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(construct_multimaximal(c));
}
BENCHMARK(BM_ConstructMultimaximal)->RangeMultiplier(2)->Range(2, 16);

void BM_AssignmentSearch(benchmark::State& state) {
  const ConstraintSystem cs = state.range(0) ? build_ks3d() : build_ks4d();
  state.SetLabel(state.range(0) ? "ks-3d" : "ks-4d");
  for (auto _ : state) benchmark::DoNotOptimize(assignment_search(cs));
}
BENCHMARK(BM_AssignmentSearch)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
