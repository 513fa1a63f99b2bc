// Serial reference vs OpenMP map over independent splitting samples and inner targets.
#include <benchmark/benchmark.h>

#include "splitforge/inner.hpp"
#include "splitforge/manifolds.hpp"
#include "splitforge/parallel.hpp"

using namespace splitforge;

namespace {

UnfoldingSpec cubic() {
    UnfoldingSpec s;
    s.alpha0 = Real(1);
    s.b = Real(1);
    s.c = Real("0.25");
    s.d = Real(1);
    s.f = Polynomial5({{Real(1), {0, 0, 3, 0, 0}}});
    s.g = Polynomial5({{Real(2), {1, 0, 2, 0, 0}}});
    s.h = Polynomial5({{Real("-0.5"), {0, 0, 3, 0, 0}}});
    return s;
}

const char* kDeltas[] = {"0.2", "0.15", "0.12", "0.1"};

template <bool Parallel>
void BM_SplittingGrid(benchmark::State& state) {
    const PrecisionContext ctx{128};
    PrecisionScope scope(ctx);
    const auto spec = cubic();
    const auto cfg = IntegratorConfig::for_precision(ctx);
    const Real eps = default_seed_eps();
    auto job = [&](std::size_t i) { return splitting(spec, ParamPoint{Real(kDeltas[i]), Real(0)}, eps, cfg).dist; };
    for (auto _ : state) {
        auto out = Parallel ? parallel_map(4, job) : serial_map(4, job);
        benchmark::DoNotOptimize(out);
    }
    state.counters["threads"] = Parallel ? worker_threads() : 1;
}

template <bool Parallel>
void BM_InnerTargets(benchmark::State& state) {
    const PrecisionContext ctx{160};
    PrecisionScope scope(ctx);
    const auto ip = InnerParams::from_spec(cubic());
    const auto cfg = IntegratorConfig::for_precision(ctx);
    InnerOptions opts;
    opts.S0 = Real(400);
    auto job = [&](std::size_t i) {
        const std::vector<Complex> t{Complex(Real(0), Real(-20 - 4 * static_cast<long>(i)))};
        return solve_inner(ip, Branch::u, t, cfg, opts).samples.front().psi;
    };
    for (auto _ : state) {
        auto out = Parallel ? parallel_map(4, job) : serial_map(4, job);
        benchmark::DoNotOptimize(out);
    }
}

}  // namespace

BENCHMARK(BM_SplittingGrid<false>)->Name("splitting_grid/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplittingGrid<true>)->Name("splitting_grid/openmp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InnerTargets<false>)->Name("inner_targets/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InnerTargets<true>)->Name("inner_targets/openmp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
