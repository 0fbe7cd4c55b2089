#include "msw/bb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace msw::bb {

namespace {

struct Node {
    long id = 0;
    long parent = -1;
    double bound = -lp::kInf;                          // parent LP value at creation
    std::vector<std::pair<int, signed char>> fixings;  // absolute (var, value) path from root
};

using FrontierKey = std::pair<double, long>;  // (bound, id): deterministic best-bound order

class Clock {
public:
    Clock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

Result solve(const lp::LpModel& master, const Options& options, const Callback* callback) {
    master.validate();
    Result res;
    for (int j = 0; j < master.num_variables(); ++j) {
        if (!master.variable(j).integer) continue;
        const auto& v = master.variable(j);
        if (v.lb < -1e-9 || v.ub > 1 + 1e-9)
            throw std::invalid_argument("integer variable '" + v.name + "' is not binary");
        res.binary_vars.push_back(j);
    }

    lp::Simplex solver(master);
    Clock clock;
    std::map<FrontierKey, Node> frontier;
    long next_id = 0;

    Node root;
    root.id = next_id++;
    frontier.emplace(FrontierKey{-lp::kInf, root.id}, std::move(root));

    double ub = lp::kInf;
    std::vector<OpenSolution> pool;
    std::map<std::vector<signed char>, std::size_t> pool_index;
    std::optional<FrontierKey> plunge_next;

    auto pool_min_lb = [&]() {
        double v = lp::kInf;
        for (const OpenSolution& o : pool) v = std::min(v, o.total_lb());
        return v;
    };
    auto global_lb = [&](double current) {
        double v = std::min(current, pool_min_lb());
        if (!frontier.empty()) v = std::min(v, frontier.begin()->first.first);
        return std::min(v, ub);
    };
    auto push_trace = [&](double current_bound) {
        res.trace.push_back(TraceRow{static_cast<long>(res.trace.size()) + 1, global_lb(current_bound), ub});
    };

    bool budget_hit = false;
    while (!frontier.empty()) {
        if (res.stats.nodes >= options.node_limit || clock.seconds() > options.time_limit_s) {
            budget_hit = true;
            break;
        }
        // plunge onto the freshest child while it survives, else best bound
        auto it = frontier.begin();
        if (plunge_next) {
            auto pit = frontier.find(*plunge_next);
            if (pit != frontier.end()) it = pit;
            plunge_next.reset();
        }
        Node node = std::move(it->second);
        frontier.erase(it);
        if (node.bound >= ub - options.prune_tol) continue;  // discarded unexplored

        ++res.stats.nodes;
        solver.reset_bounds();
        for (auto [var, val] : node.fixings) solver.set_bounds(var, val, val);

        int cut_rounds = 0;
        bool fathomed = false;
        while (!fathomed) {
            // warm start from wherever the solver last was; phase 1 repairs
            // any basis, so jumping across the tree never refactorizes
            lp::LpSolution sol = solver.solve();
            ++res.stats.lp_solves;

            if (sol.status == lp::Status::infeasible) {
                fathomed = true;
                break;
            }
            if (sol.status == lp::Status::unbounded)
                throw std::runtime_error("branch and bound: master LP is unbounded");
            node.bound = sol.objective;
            if (sol.objective >= ub - options.prune_tol) {
                fathomed = true;
                break;
            }

            int branch_var = -1;
            double branch_score = -1;
            for (int j : res.binary_vars) {
                double v = sol.x[j];
                double frac = v - std::floor(v);
                if (frac < options.int_tol || frac > 1 - options.int_tol) continue;
                double score = 0.5 - std::fabs(frac - 0.5);  // most fractional first
                if (score > branch_score + 1e-12) {
                    branch_score = score;
                    branch_var = j;
                }
            }

            double master_part = sol.objective;
            if (options.incumbent_var >= 0)
                master_part -= master.variable(options.incumbent_var).obj * sol.x[options.incumbent_var];

            if (branch_var < 0) {
                // integral
                if (!callback) {
                    if (sol.objective < ub) {
                        ub = sol.objective;
                        res.has_incumbent = true;
                        res.incumbent_value = ub;
                        res.incumbent_master_part = master_part;
                        res.incumbent_x = sol.x;
                        res.incumbent_assignment.clear();
                        for (int j : res.binary_vars)
                            res.incumbent_assignment.push_back(sol.x[j] > 0.5 ? 1 : 0);
                        push_trace(sol.objective);
                    }
                    fathomed = true;
                    break;
                }
                CallbackContext ctx{node.id, true, sol.objective, master_part, sol.x};
                CallbackResult cr = (*callback)(ctx);
                ++res.stats.callback_calls;
                if (!cr.cuts.empty()) {
                    for (const Cut& cut : cr.cuts) {
                        solver.add_row(cut.row);
                        switch (cut.kind) {
                            case CutKind::optimality: ++res.stats.cuts_optimality; break;
                            case CutKind::feasibility: ++res.stats.cuts_feasibility; break;
                            case CutKind::lshaped: ++res.stats.cuts_lshaped; break;
                            case CutKind::partial: ++res.stats.cuts_partial; break;
                        }
                    }
                    if (++cut_rounds > options.max_cut_rounds_per_node)
                        throw std::runtime_error("branch and bound: cut loop did not settle");
                    continue;  // re-solve this node with the new rows
                }
                if (cr.subproblem_infeasible)
                    throw std::runtime_error("callback reported an infeasible subproblem without a cut");

                OpenSolution open;
                open.node_id = node.id;
                open.master_part = master_part;
                open.subproblem_lb = cr.subproblem_lb.value_or(sol.objective - master_part);
                for (int j : res.binary_vars) open.assignment.push_back(sol.x[j] > 0.5 ? 1 : 0);
                bool improved = false;
                if (cr.heuristic_ub) {
                    open.heuristic_ub = *cr.heuristic_ub;
                    double cand = master_part + *cr.heuristic_ub;
                    if (cand < ub) {
                        ub = cand;
                        res.has_incumbent = true;
                        res.incumbent_value = ub;
                        res.incumbent_master_part = master_part;
                        res.incumbent_x = sol.x;
                        res.incumbent_assignment = open.assignment;
                        improved = true;
                    }
                } else {
                    open.heuristic_ub = lp::kInf;
                }
                // pool before the prune filter sees the new bound
                if (open.total_lb() < ub - 1e-6 || improved) {
                    auto [pit, inserted] = pool_index.try_emplace(open.assignment, pool.size());
                    if (inserted) pool.push_back(open);
                }
                push_trace(sol.objective);

                // The node value still underestimates the true cost of this
                // region: the pooled entry covers every completion sharing
                // this assignment of the completion variables (the LP
                // already minimizes the rest), but not sibling assignments.
                // Keep splitting on unfixed completion variables until the
                // bound closes or the assignment is pinned.
                if (sol.objective < ub - options.prune_tol) {
                    int split = -1;
                    for (int j : options.completion_vars) {
                        double lo = master.variable(j).lb, hi = master.variable(j).ub;
                        for (auto [var, val] : node.fixings)
                            if (var == j) lo = hi = val;
                        if (hi - lo > 0.5) {
                            split = j;
                            break;
                        }
                    }
                    if (split >= 0) {
                        signed char cur = sol.x[split] > 0.5 ? 1 : 0;
                        Node down, up;
                        down.id = next_id++;
                        up.id = next_id++;
                        down.parent = up.parent = node.id;
                        down.bound = up.bound = sol.objective;
                        down.fixings = node.fixings;
                        down.fixings.emplace_back(split, 0);
                        up.fixings = node.fixings;
                        up.fixings.emplace_back(split, 1);
                        FrontierKey down_key{down.bound, down.id}, up_key{up.bound, up.id};
                        plunge_next = cur ? up_key : down_key;
                        frontier.emplace(down_key, std::move(down));
                        frontier.emplace(up_key, std::move(up));
                    }
                }
                fathomed = true;
                break;
            }

            // fractional
            if (callback && options.cuts_at_fractional && cut_rounds < options.max_cut_rounds_per_node) {
                CallbackContext ctx{node.id, false, sol.objective, master_part, sol.x};
                CallbackResult cr = (*callback)(ctx);
                if (!cr.cuts.empty()) {
                    for (const Cut& cut : cr.cuts) {
                        solver.add_row(cut.row);
                        switch (cut.kind) {
                            case CutKind::optimality: ++res.stats.cuts_optimality; break;
                            case CutKind::feasibility: ++res.stats.cuts_feasibility; break;
                            case CutKind::lshaped: ++res.stats.cuts_lshaped; break;
                            case CutKind::partial: ++res.stats.cuts_partial; break;
                        }
                    }
                    ++cut_rounds;
                    continue;
                }
            }

            double frac = sol.x[branch_var] - std::floor(sol.x[branch_var]);
            Node down, up;
            down.id = next_id++;
            up.id = next_id++;
            down.parent = up.parent = node.id;
            down.bound = up.bound = sol.objective;
            down.fixings = node.fixings;
            down.fixings.emplace_back(branch_var, 0);
            up.fixings = node.fixings;
            up.fixings.emplace_back(branch_var, 1);
            FrontierKey down_key{down.bound, down.id}, up_key{up.bound, up.id};
            plunge_next = (frac >= 0.5) ? up_key : down_key;
            frontier.emplace(down_key, std::move(down));
            frontier.emplace(up_key, std::move(up));
            fathomed = true;
        }
    }

    if (budget_hit) {
        res.status = SolveStatus::dnf;
        double lb = pool_min_lb();
        if (!frontier.empty()) lb = std::min(lb, frontier.begin()->first.first);
        res.best_bound = std::min(lb, ub);
    } else {
        res.status = res.has_incumbent ? SolveStatus::optimal : SolveStatus::infeasible;
        res.best_bound = std::min(pool_min_lb(), ub);
    }

    // the pool keeps exactly the integer nodes still below the final tree bound
    std::vector<OpenSolution> kept;
    for (OpenSolution& o : pool)
        if (o.total_lb() < ub - 1e-6) kept.push_back(std::move(o));
    res.pool = std::move(kept);
    res.stats.open_solutions = static_cast<long>(res.pool.size());
    res.trace.push_back(TraceRow{static_cast<long>(res.trace.size()) + 1, res.best_bound, ub});
    return res;
}

PostProcessOutcome post_process(const std::vector<OpenSolution>& pool, double start_ub,
                                const std::function<std::optional<double>(const OpenSolution&)>& exact) {
    PostProcessOutcome out;
    out.incumbent_value = start_ub;
    std::vector<int> order(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pool[a].total_lb() != pool[b].total_lb()) return pool[a].total_lb() < pool[b].total_lb();
        return pool[a].node_id < pool[b].node_id;
    });
    for (int idx : order) {
        const OpenSolution& o = pool[idx];
        PoolRow row;
        row.lb = o.total_lb();
        row.heuristic_ub = o.total_ub();
        row.node_id = o.node_id;
        if (o.total_lb() >= out.incumbent_value - 1e-6) {
            row.processed = false;
            ++out.skipped;
            out.rows.push_back(row);
            continue;
        }
        ++out.iterations;
        row.processed = true;
        std::optional<double> value = exact(o);
        double total = value ? o.master_part + *value : lp::kInf;
        row.exact_total = total;
        out.rows.push_back(row);
        if (total < out.incumbent_value) {
            out.incumbent_value = total;
            out.winner = idx;
        }
    }
    return out;
}

}  // namespace msw::bb
