#include <benchmark/benchmark.h>

#include <complex>

#include "nestpol/bernstein.hpp"
#include "nestpol/chain.hpp"
#include "nestpol/chebyshev.hpp"

using namespace nestpol;

namespace {

const AnalyticFn pole = [](Complex w) { return 1.0 / (w - 3.0); };

void BM_Interpolate(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Interval iv(-1.0, 1.0);
    for (auto _ : state) {
        Interpolant p = interpolate(pole, iv, m);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_Interpolate)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_EvaluateOnInterval(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Interpolant p = interpolate(pole, Interval(-1.0, 1.0), m);
    double x = -1.0;
    for (auto _ : state) {
        x = x >= 1.0 ? -1.0 : x + 1e-3;
        benchmark::DoNotOptimize(p(Complex(x, 0.0)));
    }
}
BENCHMARK(BM_EvaluateOnInterval)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_DiscSupNorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BernsteinDisc disc(Interval(-1.0, 1.0), 1.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(disc_sup_norm(pole, disc, n));
}
BENCHMARK(BM_DiscSupNorm)->Arg(256)->Arg(1024)->Arg(8192);

void BM_IteratedChain(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const Chain chain = dyadic_chain(Interval(-1.0, 1.0),
                                     std::vector<int>(static_cast<size_t>(L), 10),
                                     Anchor::center);
    for (auto _ : state) {
        IteratedInterpolant itp = iterated_interpolate(chain, pole, 0, L);
        benchmark::DoNotOptimize(itp);
    }
}
BENCHMARK(BM_IteratedChain)->Arg(2)->Arg(4)->Arg(8);

void BM_LebesgueConstant(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lebesgue_constant(m));
}
BENCHMARK(BM_LebesgueConstant)->Arg(10)->Arg(30)->Arg(60);

} // namespace

BENCHMARK_MAIN();
