#include <benchmark/benchmark.h>

#include <random>

#include "multirel/closures.hpp"
#include "multirel/lawlab/engine.hpp"
#include "multirel/lawlab/parser.hpp"

using namespace multirel;

namespace {

const ObjType X = ObjType::of("X");
const ObjType Y = ObjType::of("Y");
// Past the default base-set cap, still within the 256-element object cap.
const UniverseLimits kWide{8, 256};

MultiRelation random_multi(const Universe& u, std::uint64_t seed, double density = 0.3, const ObjType& src = X) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  Relation r = Relation::of_type(u, src, Y.pow());
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    for (std::size_t j = 0; j < r.tgt_size(); ++j) {
      if (coin(rng)) r.insert(i, j);
    }
  }
  return MultiRelation(std::move(r));
}

// |X| = |Y| = range(0).
Universe square(const benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return Universe::declare({{"X", n}, {"Y", n}}, kWide);
}

}  // namespace

static void BM_InnerUnion(benchmark::State& state) {
  const Universe u = square(state);
  const auto r = random_multi(u, 1), s = random_multi(u, 2);
  for (auto _ : state) benchmark::DoNotOptimize(inner_union(r, s));
}
BENCHMARK(BM_InnerUnion)->DenseRange(2, 6, 2);

static void BM_InnerIntersection(benchmark::State& state) {
  const Universe u = square(state);
  const auto r = random_multi(u, 3), s = random_multi(u, 4);
  for (auto _ : state) benchmark::DoNotOptimize(inner_intersection(r, s));
}
BENCHMARK(BM_InnerIntersection)->DenseRange(2, 6, 2);

static void BM_PelegLift(benchmark::State& state) {
  const Universe u = square(state);
  const auto r = random_multi(u, 5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(peleg_lift(u, r));
}
BENCHMARK(BM_PelegLift)->DenseRange(2, 6);

static void BM_PelegCompose(benchmark::State& state) {
  const Universe u = square(state);
  const auto r = random_multi(u, 6, 0.1);
  const auto s = random_multi(u, 7, 0.1, Y);
  for (auto _ : state) benchmark::DoNotOptimize(peleg_compose(u, r, s));
}
BENCHMARK(BM_PelegCompose)->DenseRange(2, 6);

static void BM_Closure(benchmark::State& state) {
  const Universe u = Universe::declare({{"X", 4}, {"Y", 6}}, kWide);
  const auto r = random_multi(u, 8, 0.05);
  const auto kind = static_cast<ClosureKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(closure(kind, r));
}
BENCHMARK(BM_Closure)->Arg(0)->Arg(1)->Arg(2);

static void BM_ClosureViaOmega(benchmark::State& state) {
  const Universe u = Universe::declare({{"X", 4}, {"Y", 6}}, kWide);
  const auto r = random_multi(u, 8, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(closure_via_omega(u, ClosureKind::Up, r));
}
BENCHMARK(BM_ClosureViaOmega);

static void BM_Quotient(benchmark::State& state) {
  const Universe u = Universe::declare({{"X", 2}, {"Y", 2}});
  for (auto _ : state) benchmark::DoNotOptimize(quotient(PreorderKind::EgliMilner, u, X, Y));
}
BENCHMARK(BM_Quotient)->Unit(benchmark::kMillisecond);

// Exhaustive check of half-associativity over 2^20 assignments.
static void BM_EngineExhaustive(benchmark::State& state) {
  const auto file = lawlab::parse_law_file(
      "set X = 1\nset Y = 2\nvar R : X <-> P(Y)\nvar S, T : Y <-> P(Y)\nlaw (R * S) * T <= R * (S * T)\n");
  lawlab::EngineOptions opt;
  opt.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lawlab::run_file(file, lawlab::Goal::Check, opt));
}
BENCHMARK(BM_EngineExhaustive)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_EngineSample(benchmark::State& state) {
  const auto file = lawlab::parse_law_file(
      "set X = 2\nset Y = 2\nvar R : X <-> P(Y)\nvar S, T : Y <-> P(Y)\nlaw (R * S) * T <= R * (S * T)\n");
  lawlab::EngineOptions opt;
  opt.mode = lawlab::Mode::Sample;
  opt.samples = 10000;
  opt.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lawlab::run_file(file, lawlab::Goal::Check, opt));
}
BENCHMARK(BM_EngineSample)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
