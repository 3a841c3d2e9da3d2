#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nestpol/fastsum.hpp"

using namespace nestpol;

namespace {

struct Instance {
    std::vector<double> sources;
    std::vector<double> targets;
    std::vector<Complex> masses;
};

Instance make_instance(int n) {
    Instance inst;
    inst.sources.resize(static_cast<size_t>(n));
    inst.targets.resize(static_cast<size_t>(n));
    inst.masses.resize(static_cast<size_t>(n));
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        inst.sources[static_cast<size_t>(j)] = (j + 0.25) / n;
        inst.targets[static_cast<size_t>(j)] = (j + 0.75) / n;
        inst.masses[static_cast<size_t>(j)] = Complex(uni(rng), 0.0);
    }
    return inst;
}

void BM_Summation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = make_instance(n);
    SummationConfig config;
    config.leaf_capacity = 8;
    config.schedule = OrderSchedule::constant_order(8);
    for (auto _ : state) {
        SummationResult r =
            summation(inst.sources, inst.masses, inst.targets, inverse_distance_kernel(), config);
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Summation)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity();

void BM_DirectSummation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = make_instance(n);
    for (auto _ : state) {
        auto r = direct_summation(inst.sources, inst.masses, inst.targets,
                                  inverse_distance_kernel());
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_DirectSummation)->RangeMultiplier(2)->Range(1 << 10, 1 << 13)->Complexity();

void BM_UpwardPass(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = make_instance(n);
    const ClusterTree tree = ClusterTree::build(inst.sources, Interval(0.0, 1.0), 8,
                                                OrderSchedule::constant_order(8));
    const std::vector<double> directions{0.0};
    for (auto _ : state) {
        NodeCoefficients c = upward_pass(tree, inst.masses, directions);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_UpwardPass)->Arg(1 << 12)->Arg(1 << 15);

} // namespace

BENCHMARK_MAIN();
