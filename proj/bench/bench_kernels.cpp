// Serial reference vs OpenMP kernels on the three heavy entry points.

#include "forestcalc/category.hpp"
#include "forestcalc/layers.hpp"
#include "forestcalc/tspace.hpp"

#include <benchmark/benchmark.h>

using namespace forestcalc;

namespace {

Execution mode(const benchmark::State& state)
{
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void tree_spaces(benchmark::State& state)
{
    std::vector<Partition> lambdas;
    for (const auto& p : all_partitions(6))
        if (p.is_irreducible())
            lambdas.push_back(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(t_space_homology(lambdas, TreeModel::quotient, Coefficients::integers(), mode(state)));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void enumerate(benchmark::State& state)
{
    EnumerateOptions o;
    o.execution = mode(state);
    o.with_morphisms = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_En(5, o));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void layer_report(benchmark::State& state)
{
    LayerOptions o;
    o.execution = mode(state);
    const SimplicialSet m = minimal_circle();
    for (auto _ : state)
        benchmark::DoNotOptimize(derivative_report(m, 2, Coefficients::integers(), o));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

} // namespace

BENCHMARK(tree_spaces)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(enumerate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(layer_report)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
