#ifndef MSW_TESTS_SUPPORT_HPP
#define MSW_TESTS_SUPPORT_HPP

// Shared fixtures and the independent oracles the unit suites check
// against. Everything here is deliberately brute force and separate from
// the library's solving paths.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "msw/instance.hpp"
#include "msw/lp.hpp"
#include "msw/preproc.hpp"
#include "msw/synth.hpp"

namespace msw::test {

// --- fixtures ---------------------------------------------------------------

/// The canonical eight-combination front (rounded catalog, 5 m2).
inline std::vector<BinCombination> table_front() {
    return preprocess(synth::rounded_bin_catalog(), Fixed::parse("5"));
}

/// First `k` combinations of the canonical front.
inline std::vector<BinCombination> table_front_prefix(std::size_t k) {
    auto all = table_front();
    all.resize(k);
    return all;
}

/// One GAP (b=1, s=1), two days, one vehicle, travel 5 both ways, alpha 1,
/// combinations {1 bin, 2 bins} of the small type. Optimum 11.22.
inline Instance one_gap_instance() {
    Instance inst;
    inst.name = "fixture/one-gap";
    inst.horizon_days = 2;
    inst.alpha = Fixed::parse("1");
    inst.vehicle_count = 1;
    inst.vehicle_capacity = Fixed::parse("3");
    inst.time_limit = 12;
    inst.bin_types = synth::single_bin_catalog();
    inst.gaps.push_back({1, Fixed::parse("1.0"), 1.0, Fixed::parse("3.0")});
    inst.travel = {{0, 5}, {5, 0}};
    inst.visit_combinations = synth::standard_visits(2);
    validate_instance(inst);
    return inst;
}

/// Structural toy in the shape of the worked example: two GAPs, two days,
/// two vehicles, demands independent of the visit choice (every pattern
/// has the same accumulation gap), fractional allocation LP.
inline Instance working_example_instance() {
    Instance inst;
    inst.name = "fixture/working-example";
    inst.horizon_days = 2;
    inst.alpha = Fixed::parse("1");
    inst.vehicle_count = 2;
    inst.vehicle_capacity = Fixed::parse("4");
    inst.time_limit = 40;
    inst.bin_types = synth::rounded_bin_catalog();
    inst.gaps.push_back({1, Fixed::parse("0.9"), 1.0, Fixed::parse("5.0")});
    inst.gaps.push_back({2, Fixed::parse("0.8"), 1.0, Fixed::parse("5.0")});
    inst.travel = {{0, 6, 9}, {7, 0, 4}, {10, 5, 0}};
    // single-day patterns only: beta == 2 whichever day is assigned
    inst.visit_combinations.push_back({0, {0}, 0});
    inst.visit_combinations.push_back({1, {1}, 0});
    validate_instance(inst);
    return inst;
}

// --- pareto oracle -----------------------------------------------------------

/// O(n^2) pairwise-dominance filter, the reference for the divide-and-
/// conquer front.
inline std::vector<BinCombination> pairwise_front(const std::vector<BinCombination>& all) {
    std::vector<BinCombination> kept;
    for (const BinCombination& a : all) {
        bool dominated = false;
        for (const BinCombination& b : all) {
            if (&a == &b) continue;
            bool weak = b.joint_cost <= a.joint_cost && b.joint_capacity >= a.joint_capacity;
            bool strict = b.joint_cost < a.joint_cost || b.joint_capacity > a.joint_capacity;
            if (weak && strict) {
                dominated = true;
                break;
            }
            // exact tie: keep only the lexicographically smallest multiset
            if (weak && !strict && b.counts < a.counts) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(a);
    }
    std::sort(kept.begin(), kept.end(),
              [](const BinCombination& x, const BinCombination& y) { return x.joint_cost < y.joint_cost; });
    return kept;
}

// --- tiny-LP oracle ----------------------------------------------------------

struct AllocLpOpt {
    bool feasible = false;
    double value = 0;
    std::vector<double> weights;
};

/// Reference optimum of min sum(cost.w) s.t. sum(cap.w) >= demand,
/// sum(w) = 1, w >= 0, by enumerating every one- and two-column basis.
inline AllocLpOpt alloc_lp_by_enumeration(const std::vector<double>& cost, const std::vector<double>& cap,
                                          double demand) {
    AllocLpOpt best;
    const std::size_t n = cost.size();
    auto consider = [&](const std::vector<double>& w) {
        double capacity = 0, value = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (w[j] < -1e-12) return;
            capacity += cap[j] * w[j];
            value += cost[j] * w[j];
        }
        if (capacity < demand - 1e-9) return;
        if (!best.feasible || value < best.value - 1e-12) {
            best.feasible = true;
            best.value = value;
            best.weights = w;
        }
    };
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<double> w(n, 0.0);
        w[a] = 1.0;
        consider(w);
        for (std::size_t b = a + 1; b < n; ++b) {
            // sum w = 1 and cap.a wa + cap.b wb = demand
            double denom = cap[b] - cap[a];
            if (std::fabs(denom) < 1e-12) continue;
            double wb = (demand - cap[a]) / denom;
            std::vector<double> w2(n, 0.0);
            w2[a] = 1.0 - wb;
            w2[b] = wb;
            consider(w2);
        }
    }
    return best;
}

// --- random LP generator -------------------------------------------------------

struct RandomLp {
    lp::LpModel model;
    std::vector<double> witness;  // a feasible point (feasible instances)
};

/// Random bounded LP that is feasible by construction: rhs values are set
/// around a sampled witness point.
inline RandomLp random_feasible_lp(synth::Rng& rng, int max_vars = 30, int max_rows = 20) {
    RandomLp out;
    int n = rng.uniform_int(1, max_vars);
    int m = rng.uniform_int(1, max_rows);
    out.witness.resize(n);
    for (int j = 0; j < n; ++j) {
        double ub = rng.uniform(0.5, 10.0);
        double obj = rng.uniform(-5.0, 5.0);
        out.model.add_variable("x" + std::to_string(j), 0.0, ub, obj);
        out.witness[j] = rng.uniform(0.0, ub);
    }
    for (int r = 0; r < m; ++r) {
        lp::Row row;
        row.name = "r" + std::to_string(r);
        double activity = 0;
        for (int j = 0; j < n; ++j) {
            if (rng.uniform(0, 1) < 0.6 && n > 2) continue;
            double c = rng.uniform(-5.0, 5.0);
            row.coeffs.emplace_back(j, c);
            activity += c * out.witness[j];
        }
        int kind = rng.uniform_int(0, 2);
        if (kind == 0) {
            row.sense = lp::Sense::le;
            row.rhs = activity + rng.uniform(0.0, 3.0);
        } else if (kind == 1) {
            row.sense = lp::Sense::ge;
            row.rhs = activity - rng.uniform(0.0, 3.0);
        } else {
            row.sense = lp::Sense::eq;
            row.rhs = activity;
        }
        out.model.add_row(std::move(row));
    }
    return out;
}

/// Feasible random LP plus a contradictory pair of rows on a random
/// combination, guaranteed infeasible.
inline lp::LpModel random_infeasible_lp(synth::Rng& rng) {
    RandomLp base = random_feasible_lp(rng, 15, 10);
    int n = base.model.num_variables();
    lp::Row a, b;
    a.name = "contra_lo";
    b.name = "contra_hi";
    double activity = 0;
    for (int j = 0; j < n; ++j) {
        double c = rng.uniform(-3.0, 3.0);
        a.coeffs.emplace_back(j, c);
        b.coeffs.emplace_back(j, c);
        activity += c * base.witness[j];
    }
    a.sense = lp::Sense::ge;
    a.rhs = activity + 5.0;
    b.sense = lp::Sense::le;
    b.rhs = activity + 4.0;
    base.model.add_row(std::move(a));
    base.model.add_row(std::move(b));
    return std::move(base.model);
}

}  // namespace msw::test

#endif
