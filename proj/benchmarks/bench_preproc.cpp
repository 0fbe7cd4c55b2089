#include <benchmark/benchmark.h>

#include "msw/preproc.hpp"
#include "msw/synth.hpp"

namespace {

void BM_FrontReferenceCatalog(benchmark::State& state) {
    auto catalog = msw::synth::survey_bin_catalog();
    msw::Fixed space = msw::Fixed::parse("5");
    for (auto _ : state) {
        auto front = msw::preprocess(catalog, space);
        benchmark::DoNotOptimize(front);
    }
}
BENCHMARK(BM_FrontReferenceCatalog);

void BM_FrontWideCatalog(benchmark::State& state) {
    // six types, generous space: hundreds of feasible multisets
    msw::synth::Rng rng(7);
    std::vector<msw::BinType> catalog;
    for (int p = 0; p < 6; ++p) {
        msw::BinType b;
        b.id = p;
        b.purchase_cost = msw::Fixed::parse("100");
        b.daily_cost = msw::Fixed::from_raw(rng.uniform_int(500, 6000));
        b.capacity = msw::Fixed::from_raw(rng.uniform_int(8000, 40000));
        b.area = msw::Fixed::from_raw(rng.uniform_int(10000, 26000));
        catalog.push_back(b);
    }
    msw::Fixed space = msw::Fixed::parse("9");
    for (auto _ : state) {
        auto front = msw::preprocess(catalog, space);
        benchmark::DoNotOptimize(front);
    }
}
BENCHMARK(BM_FrontWideCatalog);

}  // namespace
