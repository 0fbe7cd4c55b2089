#include "msw/synth.hpp"

#include <cmath>
#include <string>

namespace msw::synth {

std::vector<BinType> survey_bin_catalog() {
    return {
        {0, Fixed::parse("386.80"), Fixed::parse("0.1113"), Fixed::parse("1.1"), Fixed::parse("1.42")},
        {1, Fixed::parse("1102.79"), Fixed::parse("0.3172"), Fixed::parse("2.4"), Fixed::parse("2.23")},
        {2, Fixed::parse("1287.24"), Fixed::parse("0.3703"), Fixed::parse("3.2"), Fixed::parse("2.60")},
    };
}

std::vector<BinType> rounded_bin_catalog() {
    return {
        {0, Fixed::parse("386.80"), Fixed::parse("0.11"), Fixed::parse("1.1"), Fixed::parse("1.42")},
        {1, Fixed::parse("1102.79"), Fixed::parse("0.32"), Fixed::parse("2.4"), Fixed::parse("2.23")},
        {2, Fixed::parse("1287.24"), Fixed::parse("0.37"), Fixed::parse("3.2"), Fixed::parse("2.60")},
    };
}

std::vector<BinType> single_bin_catalog() {
    return {
        {0, Fixed::parse("386.80"), Fixed::parse("0.11"), Fixed::parse("1.1"), Fixed::parse("1.42")},
    };
}

std::vector<VisitCombination> standard_visits(int horizon_days) {
    std::vector<VisitCombination> out;
    if (horizon_days == 2) {
        out.push_back({0, {0, 1}, 0});
        out.push_back({1, {0}, 0});
        out.push_back({2, {1}, 0});
    } else if (horizon_days == 4) {
        out.push_back({0, {0, 1, 2, 3}, 0});
        out.push_back({1, {0, 2}, 0});
        out.push_back({2, {1, 3}, 0});
    } else {
        // daily plus every-other-day starting at each parity
        out.push_back({0, {}, 0});
        for (int t = 0; t < horizon_days; ++t) out[0].days.push_back(t);
        VisitCombination odd{1, {}, 0}, even{2, {}, 0};
        for (int t = 0; t < horizon_days; t += 2) odd.days.push_back(t);
        for (int t = 1; t < horizon_days; t += 2) even.days.push_back(t);
        if (!odd.days.empty()) out.push_back(odd);
        if (!even.days.empty()) out.push_back(even);
        for (std::size_t k = 0; k < out.size(); ++k) out[k].id = static_cast<int>(k);
    }
    for (auto& r : out) r.beta = derive_beta(r.days, horizon_days);
    return out;
}

std::uint64_t Rng::next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Instance generate_instance(const GenParams& params, std::uint64_t seed) {
    Rng rng(seed);
    Instance inst;
    inst.name = "synth/" + std::to_string(params.gaps) + "/" + std::to_string(params.horizon_days) + "/" +
                std::to_string(seed);
    inst.horizon_days = params.horizon_days;
    inst.alpha = Fixed::parse("0.5764");
    inst.bin_types = params.single_type_catalog
                         ? single_bin_catalog()
                         : (params.rounded_catalog ? rounded_bin_catalog() : survey_bin_catalog());
    inst.visit_combinations = standard_visits(params.horizon_days);

    for (int i = 1; i <= params.gaps; ++i) {
        Gap g;
        g.id = i;
        g.daily_generation = Fixed::from_double(rng.uniform(params.demand_lo, params.demand_hi));
        g.service_time = params.service_time;
        g.available_space = params.space;
        inst.gaps.push_back(g);
    }

    int n = params.gaps + 1;
    inst.travel.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) inst.travel[i][j] = std::round(rng.uniform(params.travel_lo, params.travel_hi) * 100.0) / 100.0;

    std::vector<Fixed> gen;
    for (const Gap& g : inst.gaps) gen.push_back(g.daily_generation);
    FleetParams fp = synthesize_fleet_params(gen, inst.travel);
    inst.vehicle_count = params.vehicles > 0 ? params.vehicles : fp.vehicle_count;
    inst.vehicle_capacity = params.fixed_capacity ? params.capacity : fp.capacity;
    inst.time_limit = fp.time_limit;

    validate_instance(inst);
    return inst;
}

}  // namespace msw::synth
