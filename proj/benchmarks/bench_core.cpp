#include <benchmark/benchmark.h>

#include <string>

#include "ccsim/evolve.hpp"
#include "ccsim/hspec.hpp"
#include "ccsim/james.hpp"
#include "ccsim/model.hpp"

using namespace ccsim;

static void BM_UnitaryExp(benchmark::State& state)
{
    const int cutoff = static_cast<int>(state.range(0));
    const auto space = make_space({cutoff, cutoff}, 1);
    const Matrix h = model::two_axis_rwa(space, {}).at(0.3).matrix();
    for (auto _ : state)
        benchmark::DoNotOptimize(unitary_exp(h, 0.1));
    state.SetLabel("dim " + std::to_string(space.dimension()));
}
BENCHMARK(BM_UnitaryExp)->Arg(2)->Arg(4)->Arg(6);

static void BM_IdealCBoson(benchmark::State& state)
{
    const int cutoff = static_cast<int>(state.range(0));
    const auto space = make_space({cutoff, cutoff}, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(model::ideal_C_boson(space, 0, 1, 1));
}
BENCHMARK(BM_IdealCBoson)->Arg(4)->Arg(6)->Arg(10);

static void BM_MidpointSteps(benchmark::State& state)
{
    const auto space = make_space({4, 4}, 1);
    const TermList h = model::two_axis_rwa(space, {});
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve::propagate_timedep(h, 10.0, steps));
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_MidpointSteps)->Arg(256)->Arg(1024);

static void BM_PeriodicVsStepping(benchmark::State& state)
{
    const auto space = make_space({4, 4}, 1);
    const TermList h = model::two_axis_rwa(space, {});
    const double t = 100 * 2 * kPi / 10.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve::propagate_periodic(h, t, 256));
}
BENCHMARK(BM_PeriodicVsStepping);

static void BM_EffectiveHamiltonian(benchmark::State& state)
{
    const auto space = make_space({6}, 2);
    const TermList h = model::fermion_interaction(space, {});
    for (auto _ : state)
        benchmark::DoNotOptimize(james::effective_hamiltonian(h));
}
BENCHMARK(BM_EffectiveHamiltonian);

static void BM_ParseSerialize(benchmark::State& state)
{
    std::string text = "mode a(6); mode b(6); qubit q; param eta = 0.1; param d = 10;\n";
    for (int k = 0; k < state.range(0); ++k)
        text += "term (-i*eta/" + std::to_string(k + 1) + ") * a(a)*adag(b)*sp(q) @ -d*" + std::to_string(k + 1) +
                " +h.c.;\n";
    for (auto _ : state)
        benchmark::DoNotOptimize(hspec::serialize(hspec::parse(text)));
    state.SetBytesProcessed(state.iterations() * static_cast<long>(text.size()));
}
BENCHMARK(BM_ParseSerialize)->Arg(10)->Arg(200);
BENCHMARK_MAIN();
