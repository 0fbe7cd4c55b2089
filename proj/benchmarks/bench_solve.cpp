#include <benchmark/benchmark.h>

#include "msw/benders.hpp"
#include "msw/mip.hpp"
#include "msw/preproc.hpp"
#include "msw/synth.hpp"

namespace {

msw::Instance bench_instance() {
    msw::synth::GenParams p;
    p.gaps = 3;
    p.horizon_days = 2;
    return msw::synth::generate_instance(p, 7);
}

void BM_SolveFullMipVis(benchmark::State& state) {
    msw::Instance inst = bench_instance();
    auto combos = msw::combos_per_gap(inst);
    msw::mip::FullSolveOptions opt;
    opt.vis = true;
    for (auto _ : state) {
        auto rep = msw::mip::solve_full(inst, combos, opt);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_SolveFullMipVis)->Unit(benchmark::kMillisecond);

void BM_SolveBendersVis(benchmark::State& state) {
    msw::Instance inst = bench_instance();
    auto combos = msw::combos_per_gap(inst);
    msw::benders::UbbcOptions opt;
    opt.vis = true;
    for (auto _ : state) {
        auto res = msw::benders::ubbc_solve(inst, combos, opt);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_SolveBendersVis)->Unit(benchmark::kMillisecond);

void BM_SolveBendersVisLshaped(benchmark::State& state) {
    msw::Instance inst = bench_instance();
    auto combos = msw::combos_per_gap(inst);
    msw::benders::UbbcOptions opt;
    opt.vis = true;
    opt.lshaped = true;
    for (auto _ : state) {
        auto res = msw::benders::ubbc_solve(inst, combos, opt);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_SolveBendersVisLshaped)->Unit(benchmark::kMillisecond);

}  // namespace
