#ifndef MSW_MIP_HPP
#define MSW_MIP_HPP

#include <functional>
#include <string>
#include <vector>

#include "msw/instance.hpp"
#include "msw/lp.hpp"
#include "msw/report.hpp"

namespace msw::mip {

using CombosPerGap = std::vector<std::vector<BinCombination>>;

/// Variable index bookkeeping for the routing model. Arcs run over the
/// directed edge set of I0 (no self loops); gaps are 0-based here.
struct ModelVars {
    std::vector<std::pair<int, int>> arcs;         // (i, j) node ids
    std::vector<std::vector<std::vector<int>>> x;  // [arc][vehicle][day]
    std::vector<std::vector<std::vector<int>>> v;  // [arc][vehicle][day]
    std::vector<std::vector<int>> m;               // [gap][visit combination]
    std::vector<std::vector<int>> n;               // [gap][combination]; empty in the routing master
    std::vector<std::vector<int>> n_relaxed;       // partial-Benders copy, when present
    int q = -1;                                    // incumbent variable, -1 in the full model

    int arc_index(int i, int j) const;
};

struct BuiltModel {
    lp::LpModel model;
    ModelVars vars;
};

struct BuildConfig {
    bool allocation = true;  // n variables + capacity/choice rows
    bool master_q = false;   // incumbent variable q instead of the allocation
    bool partial = false;    // relaxed allocation copy linked to q
    double q_lb = 0;
};

/// Shared builder behind the full model and the decomposition master; the
/// routing rows are identical in both.
BuiltModel build_routing_model(const Instance& inst, const CombosPerGap& combos, const BuildConfig& config);

/// The integrated model: objective, capacity/choice rows, visit-day
/// linking, per-vehicle flow conservation, single daily departure, tour
/// duration, arc capacity and load propagation (which also excludes
/// subtours).
BuiltModel build_full(const Instance& inst, const CombosPerGap& combos);

/// Symmetry-breaking valid inequalities: vehicles start empty (bound
/// fixings), lower-indexed vehicles leave the depot first (ordering rows),
/// and only the first vehicle may serve the GAP furthest from the depot
/// (bound fixings, ties broken by lowest id).
void add_valid_inequalities(BuiltModel& built, const Instance& inst);

struct FullSolveOptions {
    bool vis = false;
    long node_limit = 1'000'000;
    double time_limit_s = 600;
};

SolveReport solve_full(const Instance& inst, const CombosPerGap& combos, const FullSolveOptions& options);

/// Follows positive x arcs from the depot, ascending head index on ties.
/// Throws if active arcs remain that no depot tour reaches.
std::vector<Route> extract_routes(const Instance& inst, const ModelVars& vars,
                                  const std::function<double(int)>& value);

/// Independent re-simulation of a report against the model rules: visit
/// days, flow shape, single departures, durations, loads, capacities and
/// the cost split. Returns human-readable violations; empty means valid.
std::vector<std::string> check_report(const Instance& inst, const CombosPerGap& combos,
                                      const SolveReport& rep);

}  // namespace msw::mip

#endif
