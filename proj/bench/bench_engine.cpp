// Serial reference vs OpenMP kernels: radial angular tabulation and the shell engine.
#include <benchmark/benchmark.h>

#include "minkprop/engine.hpp"
#include "minkprop/propagators.hpp"

using namespace mkp;

namespace {

TestFn bench_fn() {
    TestFn u = gaussian(4, 1.0);
    u.center = {0.3, 1.5, -0.4, 0.8};
    u.widths = {0.8, 1.1, 0.9, 1.2};
    u.terms.push_back(Term{cplx(0.3, -0.2), {0, 2, 1, 0}});
    return canonicalize(u);
}

void BM_TabulateRadial(benchmark::State& state) {
    const Decomposed d = decompose({bench_fn()});
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) {
        RadialTable t = tabulate_radial(d.space, 0.5, 1e-12, parallel);
        benchmark::DoNotOptimize(t.A.data());
    }
    state.SetLabel(parallel ? "openmp" : "serial");
}

void BM_ShellPropagators(benchmark::State& state) {
    const TestFn u = bench_fn();
    EngineOptions opt;
    opt.parallel = state.range(0) != 0;
    for (auto _ : state) {
        PropValues v = pair_all_kinds(1.0, u, {}, opt);
        benchmark::DoNotOptimize(v[0].value);
    }
    state.SetLabel(opt.parallel ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_TabulateRadial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShellPropagators)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
