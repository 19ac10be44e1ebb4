#include <benchmark/benchmark.h>

#include "hyperlab/criteria.hpp"
#include "hyperlab/integer_sets.hpp"
#include "hyperlab/orbits.hpp"

using namespace hyperlab;

static void BM_MinPhiEvens(benchmark::State& state) {
    PhiOptions o;
    o.delta = Rational(1, 2);
    const auto nk = IndexSequence::affine(2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(min_phi(nk, state.range(0), o));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinPhiEvens)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_HcsShift(benchmark::State& state) {
    const auto w = WeightSequence::unilateral(WeightRule::ratio());
    for (auto _ : state) benchmark::DoNotOptimize(hcs_shift(w, 50, state.range(0)));
}
BENCHMARK(BM_HcsShift)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

static void BM_OrbitLambdaB(benchmark::State& state) {
    const auto fam = OperatorFamily::lambda_b();
    const auto x = SeqVector::basis(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(orbit(fam, 2.0, x, state.range(0)));
}
BENCHMARK(BM_OrbitLambdaB)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK_MAIN();
