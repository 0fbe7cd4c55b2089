#ifndef MSW_SYNTH_HPP
#define MSW_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "msw/instance.hpp"

namespace msw::synth {

/// The three commercial side-loading bin models, survey figures
/// (daily costs carry four decimals).
std::vector<BinType> survey_bin_catalog();

/// Same catalog with daily costs rounded to whole cents; with 5 m2 of
/// space its Pareto front is the canonical eight-combination table used
/// by the small instances.
std::vector<BinType> rounded_bin_catalog();

/// Single-type catalog (the small rounded bin); with ~3 m2 of space it
/// yields exactly two combinations (one bin, two bins).
std::vector<BinType> single_bin_catalog();

/// Visit patterns used by the desk-scale instances: for a 2-day horizon
/// {both days}, {day 1}, {day 2}; for 4 days {all}, {1,3}, {2,4}.
std::vector<VisitCombination> standard_visits(int horizon_days);

/// Splitmix-style deterministic generator; identical sequences on every
/// platform (the std distributions are not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);  // inclusive bounds

private:
    std::uint64_t state_;
};

struct GenParams {
    int gaps = 3;
    int horizon_days = 2;
    /// 0 = derive from the downsizing formulas.
    int vehicles = 0;
    bool fixed_capacity = false;
    Fixed capacity;  // used when fixed_capacity
    double demand_lo = 0.5, demand_hi = 2.5;   // m3/day, quantized to 1e-4
    double travel_lo = 1.0, travel_hi = 10.0;  // minutes
    double service_time = 1.28;                // minutes
    Fixed space = Fixed::parse("5");           // m2 per GAP
    bool rounded_catalog = true;
    bool single_type_catalog = false;
};

/// Deterministic random instance; same seed, same instance.
Instance generate_instance(const GenParams& params, std::uint64_t seed);

}  // namespace msw::synth

#endif
