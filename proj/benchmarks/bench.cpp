#include <benchmark/benchmark.h>

#include <qtheta/identity.hpp>
#include <qtheta/numeric.hpp>
#include <qtheta/registry.hpp>
#include <qtheta/theta_series.hpp>

using namespace qtheta;

static void BM_SeriesMul(benchmark::State &state)
{
    auto n = state.range(0);
    QSeries a = phi_series(-1, 1, n), b = psi_series(1, 1, n);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMul)->Arg(50)->Arg(100)->Arg(200);

static void BM_SeriesInvert(benchmark::State &state)
{
    QSeries a = fneg_series(1, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(invert(a));
}
BENCHMARK(BM_SeriesInvert)->Arg(50)->Arg(100)->Arg(200);

static void BM_VerifyEntry(benchmark::State &state)
{
    const IdentityDoc &d = get_entry("R12").doc;
    for (auto _ : state) benchmark::DoNotOptimize(verify(d, state.range(0)));
}
BENCHMARK(BM_VerifyEntry)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_EvalB(benchmark::State &state)
{
    Precision P{static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(eval_b(4, 5, P));
}
BENCHMARK(BM_EvalB)->Arg(40)->Arg(80)->Arg(160);
BENCHMARK_MAIN();
