#ifndef MSW_REPORT_HPP
#define MSW_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace msw {

enum class SolveStatus { optimal, infeasible, dnf };

std::string to_string(SolveStatus s);

struct Route {
    int vehicle = 0;
    int day = 0;                                // 0-based
    std::vector<std::pair<int, int>> arcs;      // (from, to) node ids
    bool operator==(const Route&) const = default;
};

struct BoundsRow {
    long iteration = 0;
    double lb = 0;
    double ub = 0;
    bool operator==(const BoundsRow&) const = default;
};

/// One integer-node event of the decomposition: master routing part,
/// subproblem bounds and the cut families injected there.
struct IterationRow {
    long node = 0;
    double routing_part = 0;
    double sp_lp = 0;
    double sp_heur = 0;
    bool has_sp_int = false;
    double sp_int = 0;
    std::string cuts;  // "-", "optimality", "feasibility", "optimality+lshaped", ...
    bool operator==(const IterationRow&) const = default;
};

struct PoolEntryRow {
    double lb = 0;
    double heuristic = 0;
    bool processed = false;
    double exact = 0;  // 0 when skipped
    long node = 0;
    bool operator==(const PoolEntryRow&) const = default;
};

struct SolveStats {
    long nodes = 0;
    long lp_solves = 0;
    long master_iterations = 0;
    long postproc_iterations = 0;
    long postproc_skipped = 0;
    long open_solutions = 0;
    long cuts_optimality = 0;
    long cuts_feasibility = 0;
    long cuts_lshaped = 0;
    long cuts_partial = 0;
    bool operator==(const SolveStats&) const = default;
};

/// Full outcome of one solve. Deterministic content only: wall time lives
/// with the bench harness, never here, so reruns are byte-identical.
struct SolveReport {
    std::string instance;
    std::string method;   // "mip", "benders", "oracle"
    std::string options;  // "-", "vis", "vis+lshaped", ...
    SolveStatus status = SolveStatus::optimal;
    double objective = 0;
    double routing_cost = 0;
    double bin_cost = 0;
    double best_bound = 0;
    std::vector<Route> routes;  // only nonempty vehicle-days
    std::vector<int> bins;      // per gap: combination id
    std::vector<int> visits;    // per gap: visit-combination id
    std::vector<BoundsRow> trace;
    std::vector<IterationRow> iterations;
    std::vector<PoolEntryRow> pool;
    SolveStats stats;
    std::string note;  // single line; infeasibility evidence and the like

    bool operator==(const SolveReport&) const = default;
};

void write_report(const SolveReport& rep, std::ostream& out);
std::string report_to_string(const SolveReport& rep);
SolveReport load_report(std::istream& in, const std::string& display_name = "<stream>");
SolveReport load_report_file(const std::string& path);

}  // namespace msw

#endif
