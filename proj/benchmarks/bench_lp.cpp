#include <benchmark/benchmark.h>

#include "msw/lp.hpp"
#include "msw/mip.hpp"
#include "msw/preproc.hpp"
#include "msw/synth.hpp"

namespace {

void BM_AllocationLp(benchmark::State& state) {
    auto combos = msw::preprocess(msw::synth::rounded_bin_catalog(), msw::Fixed::parse("5"));
    msw::lp::LpModel m;
    for (const auto& u : combos)
        m.add_variable("n" + std::to_string(u.id), 0, msw::lp::kInf, u.joint_cost.to_double());
    msw::lp::Row cap{"cap", {}, msw::lp::Sense::ge, 1.65};
    msw::lp::Row one{"one", {}, msw::lp::Sense::eq, 1};
    for (std::size_t u = 0; u < combos.size(); ++u) {
        cap.coeffs.emplace_back(static_cast<int>(u), combos[u].joint_capacity.to_double());
        one.coeffs.emplace_back(static_cast<int>(u), 1.0);
    }
    m.add_row(std::move(cap));
    m.add_row(std::move(one));
    for (auto _ : state) {
        auto sol = msw::lp::solve_lp(m);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_AllocationLp);

void BM_MasterRootLp(benchmark::State& state) {
    msw::synth::GenParams p;
    p.gaps = static_cast<int>(state.range(0));
    p.horizon_days = 2;
    msw::Instance inst = msw::synth::generate_instance(p, 11);
    auto combos = msw::combos_per_gap(inst);
    msw::mip::BuiltModel built = msw::mip::build_full(inst, combos);
    for (auto _ : state) {
        auto sol = msw::lp::solve_lp(built.model);
        benchmark::DoNotOptimize(sol);
    }
    state.SetLabel(std::to_string(built.model.num_rows()) + " rows");
}
BENCHMARK(BM_MasterRootLp)->Arg(3)->Arg(5);

}  // namespace
