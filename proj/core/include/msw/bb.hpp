#ifndef MSW_BB_HPP
#define MSW_BB_HPP

#include <functional>
#include <optional>
#include <vector>

#include "msw/lp.hpp"

namespace msw::bb {

enum class CutKind { optimality, feasibility, lshaped, partial };

struct Cut {
    lp::Row row;
    CutKind kind = CutKind::optimality;
};

struct CallbackContext {
    long node_id = 0;
    bool integral = true;       // false only for fractional-node cut rounds
    double lp_objective = 0;    // node LP value, incumbent variable included
    double master_part = 0;     // lp_objective minus the incumbent-variable term
    const std::vector<double>& x;
};

/// What an integer-node callback hands back: violated rows to inject, the
/// subproblem LP bound at this assignment, and a feasible completion value
/// (absent when the subproblem is infeasible here).
struct CallbackResult {
    std::vector<Cut> cuts;
    std::optional<double> subproblem_lb;
    std::optional<double> heuristic_ub;
    bool subproblem_infeasible = false;
};

using Callback = std::function<CallbackResult(const CallbackContext&)>;

struct Options {
    double int_tol = 1e-6;
    double prune_tol = 1e-6;  // absolute; matches the open-solution rule
    long node_limit = 1'000'000;
    double time_limit_s = 600;
    bool cuts_at_fractional = false;
    int incumbent_var = -1;  // model index of q, -1 when the model has none
    int max_cut_rounds_per_node = 200;
    /// Binaries the subproblem value depends on (the m variables). A node
    /// whose LP is integral but whose bound still sits below the incumbent
    /// is only fathomed once these are all bound-fixed; until then the
    /// search keeps branching on them, because the node LP value
    /// underestimates the true cost and sibling assignments in the subtree
    /// would otherwise be lost to the open-solution pool.
    std::vector<int> completion_vars;
};

/// An integer master assignment whose exact completion is still open.
struct OpenSolution {
    std::vector<signed char> assignment;  // values of the binaries, in binary_vars order
    double master_part = 0;
    double subproblem_lb = 0;
    double heuristic_ub = 0;
    long node_id = 0;

    double total_lb() const { return master_part + subproblem_lb; }
    double total_ub() const { return master_part + heuristic_ub; }
};

enum class SolveStatus { optimal, infeasible, dnf };

struct TraceRow {
    long iteration = 0;
    double lb = 0;
    double ub = 0;
};

struct Stats {
    long nodes = 0;
    long lp_solves = 0;
    long callback_calls = 0;  // master iterations
    long cuts_optimality = 0;
    long cuts_feasibility = 0;
    long cuts_lshaped = 0;
    long cuts_partial = 0;
    long open_solutions = 0;
    long postproc_iterations = 0;
    long postproc_skipped = 0;
};

struct Result {
    SolveStatus status = SolveStatus::optimal;
    bool has_incumbent = false;
    double incumbent_value = lp::kInf;  // best valid completion found in the tree
    double incumbent_master_part = 0;
    std::vector<double> incumbent_x;               // full primal at the incumbent's node
    std::vector<signed char> incumbent_assignment;  // binaries only
    double best_bound = -lp::kInf;
    std::vector<OpenSolution> pool;  // every integer node with total_lb < incumbent_value - 1e-6
    std::vector<int> binary_vars;    // model indexes behind assignment entries
    Stats stats;
    std::vector<TraceRow> trace;
};

/// Single-tree search over the binaries of `master`. Without a callback
/// this is plain best-bound branch and bound; with one, integer nodes go
/// through lazy cut rounds and the incumbent is maintained from heuristic
/// completions only (node LP values underestimate true costs).
Result solve(const lp::LpModel& master, const Options& options, const Callback* callback = nullptr);

struct PoolRow {
    double lb = 0;
    double heuristic_ub = 0;
    bool processed = false;
    double exact_total = 0;  // meaningful only when processed
    long node_id = 0;
};

struct PostProcessOutcome {
    double incumbent_value = lp::kInf;
    int winner = -1;  // pool index of the exact-solved winner, -1 if the start incumbent stands
    long iterations = 0;
    long skipped = 0;
    std::vector<PoolRow> rows;  // in processing order
};

/// Finishes the open solutions in ascending lower-bound order, skipping
/// any whose bound already meets the running incumbent. `exact` returns
/// the exact subproblem completion value for an assignment (nullopt =
/// infeasible).
PostProcessOutcome post_process(const std::vector<OpenSolution>& pool, double start_ub,
                                const std::function<std::optional<double>(const OpenSolution&)>& exact);

}  // namespace msw::bb

#endif
