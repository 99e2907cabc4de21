// Parallel kernels against their serial references on square 2D grids.
//
//   ./bench_kernels --benchmark_filter=Polarize
//   OMP_NUM_THREADS=8 ./bench_kernels

#include <benchmark/benchmark.h>

#include "polsym/functional.hpp"
#include "polsym/grid.hpp"
#include "polsym/polarize.hpp"
#include "polsym/rearrange.hpp"
#include "polsym/reference.hpp"

namespace {

using namespace polsym;

GridFunction bumps(int n) {
    return generate_test_function(FunctionKind::MultiBump, {}, GridSpec({n, n}, 1.0 / n), 3);
}

HalfSpace offset_plane(int n) { return HalfSpace::axis(2, 0, +1, 0.5 * 3.0 / n); }

void BM_PolarizeExact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    const auto hs = offset_plane(n);
    const auto cert = is_grid_compatible(hs, u.spec());
    for (auto _ : state) benchmark::DoNotOptimize(polarize(u, hs, cert));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

void BM_PolarizeExactReference(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    const auto hs = offset_plane(n);
    for (auto _ : state) benchmark::DoNotOptimize(reference::polarize_exact(u, hs));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

void BM_PolarizeInterp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    const HalfSpace hs(2, {0.8, 0.6, 0.0}, 0.05);
    const auto cert = is_grid_compatible(hs, u.spec());
    for (auto _ : state) benchmark::DoNotOptimize(polarize(u, hs, cert));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

void BM_PolarizeInterpReference(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    const HalfSpace hs(2, {0.8, 0.6, 0.0}, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(reference::polarize_interp(u, hs));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

void BM_Functional(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    const Integrand j(WeightedPower{1.0, 2.0});
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_functional(u, j));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

void BM_FunctionalReference(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    const Integrand j(WeightedPower{1.0, 2.0});
    for (auto _ : state) benchmark::DoNotOptimize(reference::evaluate_functional(u, j));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

void BM_Symmetrize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto u = bumps(n);
    for (auto _ : state) benchmark::DoNotOptimize(schwarz_symmetrize(u));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(u.size()));
}

}  // namespace

BENCHMARK(BM_PolarizeExact)->Arg(65)->Arg(257)->Arg(1025);
BENCHMARK(BM_PolarizeExactReference)->Arg(65)->Arg(257)->Arg(1025);
BENCHMARK(BM_PolarizeInterp)->Arg(65)->Arg(257)->Arg(1025);
BENCHMARK(BM_PolarizeInterpReference)->Arg(65)->Arg(257)->Arg(1025);
BENCHMARK(BM_Functional)->Arg(65)->Arg(257)->Arg(1025);
BENCHMARK(BM_FunctionalReference)->Arg(65)->Arg(257)->Arg(1025);
BENCHMARK(BM_Symmetrize)->Arg(65)->Arg(257)->Arg(1025);

BENCHMARK_MAIN();
