#include <benchmark/benchmark.h>

#include "charfield/characterize.hpp"
#include "charfield/measure.hpp"
#include "charfield/padic.hpp"

using namespace charfield;

static void BM_push_T_f9(benchmark::State& state) {
    RingSpec f9 = RingSpec::extension_field(3, 2);
    Rng rng(17);
    Dist mu = sample_dist(rng, f9, {});
    for (auto _ : state) {
        JointDist joint = push_T(mu, mu);
        benchmark::DoNotOptimize(&joint);
    }
}
BENCHMARK(BM_push_T_f9);

static void BM_closed_form_f9(benchmark::State& state) {
    RingSpec f9 = RingSpec::extension_field(3, 2);
    Rng rng(17);
    Dist mu = sample_dist(rng, f9, {});
    for (auto _ : state) {
        JointDist joint = closed_form_SD(mu);
        benchmark::DoNotOptimize(&joint);
    }
}
BENCHMARK(BM_closed_form_f9);

static void BM_sqrt_hensel(benchmark::State& state) {
    const int prec = static_cast<int>(state.range(0));
    BranchTable table = branch_table(7);
    PAdic two = PAdic::from_integer(7, 2, prec);
    for (auto _ : state) {
        PAdic r = sqrt_hensel(two, table);
        benchmark::DoNotOptimize(&r);
    }
}
BENCHMARK(BM_sqrt_hensel)->Arg(8)->Arg(32)->Arg(128);

static void BM_sqrt_series(benchmark::State& state) {
    const int prec = static_cast<int>(state.range(0));
    BranchTable table = branch_table(7);
    PAdic two = PAdic::from_integer(7, 2, prec);
    for (auto _ : state) {
        PAdic r = sqrt_series(two, table);
        benchmark::DoNotOptimize(&r);
    }
}
BENCHMARK(BM_sqrt_series)->Arg(8)->Arg(32);

static void BM_feq_zmod(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    StepDensity rho = StepDensity::haar_ball(3, 1, level);
    RingSpec carrier = RingSpec::modular_ring(3, level);
    std::map<Elt, Rat> f;
    for (const auto& [r, v] : rho.values()) f.emplace(Elt(carrier, r), v);
    for (auto _ : state) {
        FeqVerdict v = feq_check(f, carrier);
        benchmark::DoNotOptimize(&v);
    }
}
BENCHMARK(BM_feq_zmod)->Arg(2)->Arg(3);

static void BM_lemma5_residues(benchmark::State& state) {
    PAdic u0 = PAdic::from_integer(3, 0, 8);
    PAdic v0 = PAdic::from_integer(3, 1, 8);
    for (auto _ : state) {
        Lemma5Result r = lemma5_check(u0, v0, 1, 4);
        benchmark::DoNotOptimize(&r);
    }
}
BENCHMARK(BM_lemma5_residues);

BENCHMARK_MAIN();
