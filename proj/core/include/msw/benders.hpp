#ifndef MSW_BENDERS_HPP
#define MSW_BENDERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "msw/bb.hpp"
#include "msw/instance.hpp"
#include "msw/mip.hpp"
#include "msw/report.hpp"

namespace msw::benders {

using mip::CombosPerGap;

/// Exact per-GAP allocation: cheapest combination covering each demand.
struct IntAllocation {
    bool feasible = true;
    Fixed value;
    std::vector<int> plan;             // combination id per gap
    std::vector<int> infeasible_gaps;  // 1-based ids when !feasible
};

IntAllocation solve_subproblem_int(const CombosPerGap& combos, const std::vector<Fixed>& demands);

/// LP relaxation of one GAP's allocation, solved on the lower convex
/// envelope of its (capacity, cost) points.
struct GapLp {
    double value = 0;
    double delta = 0;  // dual of the capacity row, >= 0
    double gamma = 0;  // dual of the choice row, free
    Fixed fractional_capacity;  // K^f = sum of cap over the fractional picks
    std::vector<std::pair<int, double>> weights;  // (combination id, weight)
};

struct LpAllocation {
    bool feasible = true;
    double value = 0;
    std::vector<GapLp> gaps;
    std::vector<std::pair<double, double>> farkas;  // per gap (delta^, gamma^); zero when covered
    std::vector<int> infeasible_gaps;               // 1-based
};

LpAllocation solve_subproblem_lp(const CombosPerGap& combos, const std::vector<Fixed>& demands);

/// Fractional-demand variant used for cut rounds at fractional nodes.
LpAllocation solve_subproblem_lp_fractional(const CombosPerGap& combos, const std::vector<double>& demands);

/// Rounding step: cheapest combination whose capacity reaches each GAP's
/// joint fractional capacity. Always feasible once the LP is.
IntAllocation heuristic_round(const CombosPerGap& combos, const LpAllocation& lp);

/// A generated cut in semantic form; `row` materializes it over a master's
/// variables and `violation` evaluates it at an integer assignment.
struct Cut {
    bb::CutKind kind = bb::CutKind::optimality;
    long iteration = 0;                      // callback ordinal it came from
    std::vector<double> delta, gamma;        // optimality / feasibility data, per gap
    double q_value = 0;                      // L-shaped: exact subproblem value
    double global_lb = 0;                    // L-shaped: anchor
    std::vector<int> active_r;               // L-shaped: active visit combination per gap
};

lp::Row cut_row(const Cut& cut, const Instance& inst, const mip::ModelVars& vars);

/// Positive result means the cut is violated by (assignment, q).
double cut_violation(const Cut& cut, const Instance& inst, const std::vector<int>& assignment_r, double q);

Cut gen_optimality_cut(const LpAllocation& lp, long iteration);
Cut gen_feasibility_cut(const LpAllocation& lp, long iteration);
Cut gen_lshaped_cut(const std::vector<int>& assignment_r, double q_int, double global_lb, long iteration);

/// Cost of the exact allocation at the demand-minimizing visit choice; a
/// global lower bound on the incumbent q.
struct GlobalLb {
    bool feasible = true;
    Fixed value;
    std::vector<int> infeasible_gaps;
};
GlobalLb compute_global_lb(const Instance& inst, const CombosPerGap& combos);

/// Routing master: same rows as the full model with the allocation
/// replaced by q (plus an optional relaxed allocation copy).
mip::BuiltModel build_master(const Instance& inst, const CombosPerGap& combos, bool vis, bool partial,
                             Fixed global_lb);

struct UbbcOptions {
    bool vis = false;
    bool partial = false;
    bool lshaped = false;
    bool cuts_at_fractional = false;
    long node_limit = 1'000'000;
    double time_limit_s = 600;
};

struct UbbcResult {
    SolveReport report;
    std::vector<Cut> cuts;  // everything generated, for the safety suite
};

/// The full unified branch-and-Benders-cut run: single tree, lazy cuts at
/// integer nodes, heuristic upper bounds, open-solution pool, exact
/// post-processing.
UbbcResult ubbc_solve(const Instance& inst, const CombosPerGap& combos, const UbbcOptions& options);

/// Demands b_g * beta_{r_g} for a full visit assignment.
std::vector<Fixed> demands_for(const Instance& inst, const std::vector<int>& assignment_r);

}  // namespace msw::benders

#endif
