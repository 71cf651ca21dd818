// Serial versus OpenMP sampling loops.

#include <benchmark/benchmark.h>

#include "raysym/random.hpp"
#include "raysym/selftest.hpp"

using namespace raysym;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_CheckPreservation(benchmark::State& state) {
    Rng rng(1);
    const auto n = static_cast<Eigen::Index>(state.range(1));
    const auto phi = induce(SemilinearOperator(random_invertible(rng, n, ScalarField::Complex), Automorphism::Conjugation));
    for (auto _ : state) benchmark::DoNotOptimize(check_preservation(phi, 1000, 3, 1e-8, mode(state)));
    state.SetItemsProcessed(state.iterations() * 1000);
}

void BM_IsSymmetry(benchmark::State& state) {
    Rng rng(2);
    const auto n = static_cast<Eigen::Index>(state.range(1));
    const auto space = corpus_space(rng, n, 2);
    const auto v = generate_eta_isometry(space, 4, 2.0);
    const auto t = induced_ray_map(v);
    for (auto _ : state) benchmark::DoNotOptimize(is_symmetry(space, t, 1000, 3, 1e-8, mode(state)));
    state.SetItemsProcessed(state.iterations() * 1000);
}

void BM_Reconstruct(benchmark::State& state) {
    Rng rng(3);
    const auto n = static_cast<Eigen::Index>(state.range(1));
    const auto phi = induce(SemilinearOperator(random_invertible(rng, n, ScalarField::Complex), Automorphism::Identity));
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct(phi, 256, 3, mode(state)));
}

} // namespace

BENCHMARK(BM_CheckPreservation)->ArgsProduct({{0, 1}, {3, 8}})->ArgNames({"parallel", "n"})->UseRealTime();
BENCHMARK(BM_IsSymmetry)->ArgsProduct({{0, 1}, {3, 8}})->ArgNames({"parallel", "n"})->UseRealTime();
BENCHMARK(BM_Reconstruct)->ArgsProduct({{0, 1}, {3, 8}})->ArgNames({"parallel", "n"})->UseRealTime();

BENCHMARK_MAIN();
