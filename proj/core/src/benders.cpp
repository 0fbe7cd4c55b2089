#include "msw/benders.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace msw::benders {

namespace {

// Lower convex hull of the (capacity, cost) points of one GAP's front;
// the LP optimum lives on it. The front arrives sorted by ascending cost
// and capacity.
struct Envelope {
    std::vector<int> idx;  // indices into the combo list, hull vertices

    static Envelope of(const std::vector<BinCombination>& combos) {
        Envelope e;
        for (std::size_t k = 0; k < combos.size(); ++k) {
            while (e.idx.size() >= 2) {
                const BinCombination& a = combos[e.idx[e.idx.size() - 2]];
                const BinCombination& b = combos[e.idx.back()];
                const BinCombination& c = combos[k];
                double abx = (b.joint_capacity - a.joint_capacity).to_double();
                double aby = (b.joint_cost - a.joint_cost).to_double();
                double acx = (c.joint_capacity - a.joint_capacity).to_double();
                double acy = (c.joint_cost - a.joint_cost).to_double();
                // keep b only if it lies strictly below segment a-c
                if (aby * acx < acy * abx - 1e-15) break;
                e.idx.pop_back();
            }
            e.idx.push_back(static_cast<int>(k));
        }
        return e;
    }
};

GapLp solve_gap(const std::vector<BinCombination>& combos, double demand, const Fixed* exact_demand) {
    GapLp out;
    const BinCombination& first = combos.front();
    bool below_first = exact_demand ? (*exact_demand <= first.joint_capacity)
                                    : (demand <= first.joint_capacity.to_double() + 1e-12);
    if (below_first) {
        out.value = first.joint_cost.to_double();
        out.delta = 0;
        out.gamma = first.joint_cost.to_double();
        out.fractional_capacity = first.joint_capacity;
        out.weights = {{first.id, 1.0}};
        return out;
    }
    Envelope env = Envelope::of(combos);
    for (std::size_t s = 1; s < env.idx.size(); ++s) {
        const BinCombination& a = combos[env.idx[s - 1]];
        const BinCombination& b = combos[env.idx[s]];
        bool in_segment = exact_demand ? (*exact_demand <= b.joint_capacity)
                                       : (demand <= b.joint_capacity.to_double() + 1e-12);
        if (!in_segment) continue;
        double ca = a.joint_capacity.to_double(), cb = b.joint_capacity.to_double();
        double fa = a.joint_cost.to_double(), fb = b.joint_cost.to_double();
        out.delta = (fb - fa) / (cb - ca);
        out.gamma = fa - out.delta * ca;
        bool at_vertex = exact_demand ? (*exact_demand == b.joint_capacity) : (std::fabs(demand - cb) <= 1e-12);
        if (at_vertex) {
            out.value = fb;
            out.weights = {{b.id, 1.0}};
        } else {
            double wb = (demand - ca) / (cb - ca);
            double wa = 1.0 - wb;
            out.value = wa * fa + wb * fb;
            out.weights = {{a.id, wa}, {b.id, wb}};
        }
        out.fractional_capacity = exact_demand ? *exact_demand : Fixed::from_double(demand);
        return out;
    }
    throw std::logic_error("solve_gap called with an uncoverable demand");
}

template <class DemandAt, class Coverable>
LpAllocation solve_lp_generic(const CombosPerGap& combos, std::size_t gaps, DemandAt&& demand_at,
                              Coverable&& coverable) {
    LpAllocation out;
    out.farkas.assign(gaps, {0.0, 0.0});
    for (std::size_t g = 0; g < gaps; ++g)
        if (!coverable(g)) {
            out.feasible = false;
            out.infeasible_gaps.push_back(static_cast<int>(g) + 1);
            out.farkas[g] = {1.0, -combos[g].back().joint_capacity.to_double()};
        }
    if (!out.feasible) return out;
    out.gaps.resize(gaps);
    for (std::size_t g = 0; g < gaps; ++g) {
        out.gaps[g] = demand_at(g);
        out.value += out.gaps[g].value;
    }
    return out;
}

}  // namespace

std::vector<Fixed> demands_for(const Instance& inst, const std::vector<int>& assignment_r) {
    std::vector<Fixed> out(inst.gaps.size());
    for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
        if (assignment_r[g] < 0 || assignment_r[g] >= static_cast<int>(inst.visit_combinations.size()))
            throw ValidationError("gap " + std::to_string(g + 1) + ": no visit combination assigned");
        out[g] = inst.gaps[g].daily_generation * inst.visit_combinations[assignment_r[g]].beta;
    }
    return out;
}

IntAllocation solve_subproblem_int(const CombosPerGap& combos, const std::vector<Fixed>& demands) {
    IntAllocation out;
    out.plan.assign(combos.size(), -1);
    for (std::size_t g = 0; g < combos.size(); ++g) {
        for (const BinCombination& u : combos[g]) {  // ascending cost
            if (u.joint_capacity >= demands[g]) {
                out.plan[g] = u.id;
                out.value += u.joint_cost;
                break;
            }
        }
        if (out.plan[g] < 0) {
            out.feasible = false;
            out.infeasible_gaps.push_back(static_cast<int>(g) + 1);
        }
    }
    if (!out.feasible) {
        out.value = Fixed{};
        out.plan.clear();
    }
    return out;
}

LpAllocation solve_subproblem_lp(const CombosPerGap& combos, const std::vector<Fixed>& demands) {
    return solve_lp_generic(
        combos, combos.size(), [&](std::size_t g) { return solve_gap(combos[g], demands[g].to_double(), &demands[g]); },
        [&](std::size_t g) { return demands[g] <= combos[g].back().joint_capacity; });
}

LpAllocation solve_subproblem_lp_fractional(const CombosPerGap& combos, const std::vector<double>& demands) {
    return solve_lp_generic(
        combos, combos.size(), [&](std::size_t g) { return solve_gap(combos[g], demands[g], nullptr); },
        [&](std::size_t g) { return demands[g] <= combos[g].back().joint_capacity.to_double() + 1e-9; });
}

IntAllocation heuristic_round(const CombosPerGap& combos, const LpAllocation& lp) {
    if (!lp.feasible) throw ValidationError("heuristic_round needs a feasible LP allocation");
    IntAllocation out;
    out.plan.assign(combos.size(), -1);
    for (std::size_t g = 0; g < combos.size(); ++g) {
        Fixed kf = lp.gaps[g].fractional_capacity;
        for (const BinCombination& u : combos[g]) {
            if (u.joint_capacity >= kf) {
                out.plan[g] = u.id;
                out.value += u.joint_cost;
                break;
            }
        }
        // K^f never exceeds the largest capacity, so a pick always exists
        if (out.plan[g] < 0) throw std::logic_error("heuristic_round: no combination reaches K^f");
    }
    return out;
}

Cut gen_optimality_cut(const LpAllocation& lp, long iteration) {
    Cut c;
    c.kind = bb::CutKind::optimality;
    c.iteration = iteration;
    for (const GapLp& g : lp.gaps) {
        c.delta.push_back(g.delta);
        c.gamma.push_back(g.gamma);
    }
    return c;
}

Cut gen_feasibility_cut(const LpAllocation& lp, long iteration) {
    Cut c;
    c.kind = bb::CutKind::feasibility;
    c.iteration = iteration;
    for (auto [d, gm] : lp.farkas) {
        c.delta.push_back(d);
        c.gamma.push_back(gm);
    }
    return c;
}

Cut gen_lshaped_cut(const std::vector<int>& assignment_r, double q_int, double global_lb, long iteration) {
    Cut c;
    c.kind = bb::CutKind::lshaped;
    c.iteration = iteration;
    c.q_value = q_int;
    c.global_lb = global_lb;
    c.active_r = assignment_r;
    return c;
}

lp::Row cut_row(const Cut& cut, const Instance& inst, const mip::ModelVars& vars) {
    if (vars.q < 0) throw std::logic_error("cut_row needs a master model with an incumbent variable");
    lp::Row row;
    const std::size_t N = inst.gaps.size();
    const int R = static_cast<int>(inst.visit_combinations.size());
    if (cut.kind == bb::CutKind::optimality) {
        // q >= sum_g gamma_g + delta_g * b_g * sum_r beta_r m_gr
        row.name = "oc_" + std::to_string(cut.iteration);
        row.sense = lp::Sense::ge;
        double rhs = 0;
        row.coeffs.emplace_back(vars.q, 1.0);
        for (std::size_t g = 0; g < N; ++g) {
            rhs += cut.gamma[g];
            double b = inst.gaps[g].daily_generation.to_double();
            if (cut.delta[g] == 0.0) continue;
            for (int r = 0; r < R; ++r)
                row.coeffs.emplace_back(vars.m[g][r],
                                        -cut.delta[g] * b * inst.visit_combinations[r].beta);
        }
        row.rhs = rhs;
        return row;
    }
    if (cut.kind == bb::CutKind::feasibility) {
        // sum_g gamma^_g + delta^_g * b_g * sum_r beta_r m_gr <= 0
        row.name = "fc_" + std::to_string(cut.iteration);
        row.sense = lp::Sense::le;
        double rhs = 0;
        for (std::size_t g = 0; g < N; ++g) {
            rhs -= cut.gamma[g];
            double b = inst.gaps[g].daily_generation.to_double();
            if (cut.delta[g] == 0.0) continue;
            for (int r = 0; r < R; ++r)
                row.coeffs.emplace_back(vars.m[g][r], cut.delta[g] * b * inst.visit_combinations[r].beta);
        }
        row.rhs = rhs;
        return row;
    }
    if (cut.kind == bb::CutKind::lshaped) {
        // q >= (qv-L)(sum_S m - sum_notS m) - (qv-L)(|S|-1) + L
        row.name = "lc_" + std::to_string(cut.iteration);
        row.sense = lp::Sense::ge;
        double w = cut.q_value - cut.global_lb;
        row.coeffs.emplace_back(vars.q, 1.0);
        for (std::size_t g = 0; g < N; ++g)
            for (int r = 0; r < R; ++r)
                row.coeffs.emplace_back(vars.m[g][r], r == cut.active_r[g] ? -w : w);
        row.rhs = cut.global_lb - w * (static_cast<double>(N) - 1);
        return row;
    }
    throw std::logic_error("cut_row: partial-Benders rows are part of the master build");
}

double cut_violation(const Cut& cut, const Instance& inst, const std::vector<int>& assignment_r, double q) {
    const std::size_t N = inst.gaps.size();
    if (cut.kind == bb::CutKind::optimality || cut.kind == bb::CutKind::feasibility) {
        double val = 0;
        for (std::size_t g = 0; g < N; ++g) {
            double beta = inst.visit_combinations[assignment_r[g]].beta;
            val += cut.gamma[g] + cut.delta[g] * inst.gaps[g].daily_generation.to_double() * beta;
        }
        return cut.kind == bb::CutKind::optimality ? val - q : val;
    }
    if (cut.kind == bb::CutKind::lshaped) {
        long matches = 0;
        for (std::size_t g = 0; g < N; ++g)
            if (assignment_r[g] == cut.active_r[g]) ++matches;
        double w = cut.q_value - cut.global_lb;
        double lhs = w * (2.0 * static_cast<double>(matches) - static_cast<double>(N)) -
                     w * (static_cast<double>(N) - 1) + cut.global_lb;
        return lhs - q;
    }
    return 0;  // partial structure is checked against a full allocation elsewhere
}

GlobalLb compute_global_lb(const Instance& inst, const CombosPerGap& combos) {
    GlobalLb out;
    int beta_min = inst.visit_combinations.front().beta;
    for (const VisitCombination& r : inst.visit_combinations) beta_min = std::min(beta_min, r.beta);
    std::vector<Fixed> demands;
    for (const Gap& g : inst.gaps) demands.push_back(g.daily_generation * beta_min);
    IntAllocation ia = solve_subproblem_int(combos, demands);
    if (!ia.feasible) {
        out.feasible = false;
        out.infeasible_gaps = ia.infeasible_gaps;
        return out;
    }
    out.value = ia.value;
    return out;
}

mip::BuiltModel build_master(const Instance& inst, const CombosPerGap& combos, bool vis, bool partial,
                             Fixed global_lb) {
    mip::BuildConfig cfg;
    cfg.allocation = false;
    cfg.master_q = true;
    cfg.partial = partial;
    cfg.q_lb = global_lb.to_double();
    mip::BuiltModel built = mip::build_routing_model(inst, combos, cfg);
    if (vis) mip::add_valid_inequalities(built, inst);
    return built;
}

UbbcResult ubbc_solve(const Instance& inst, const CombosPerGap& combos, const UbbcOptions& options) {
    UbbcResult out;
    SolveReport& rep = out.report;
    rep.instance = inst.name;
    rep.method = "benders";
    {
        std::string o;
        if (options.vis) o += "vis";
        if (options.partial) o += (o.empty() ? "" : "+") + std::string("partial");
        if (options.lshaped) o += (o.empty() ? "" : "+") + std::string("lshaped");
        rep.options = o;
    }

    GlobalLb glb = compute_global_lb(inst, combos);
    if (!glb.feasible) {
        rep.status = SolveStatus::infeasible;
        std::string ids;
        for (int g : glb.infeasible_gaps) ids += (ids.empty() ? "" : ",") + std::to_string(g);
        rep.note = "no visit pattern covers the demand of gap(s) " + ids;
        return out;
    }

    mip::BuiltModel built = build_master(inst, combos, options.vis, options.partial, glb.value);
    const mip::ModelVars& vars = built.vars;
    const int R = static_cast<int>(inst.visit_combinations.size());

    long iter_counter = 0;
    std::set<int> uncoverable_seen;
    std::vector<IterationRow> iter_rows;

    auto extract_assignment = [&](const std::vector<double>& x) {
        std::vector<int> r(inst.gaps.size(), -1);
        for (std::size_t g = 0; g < inst.gaps.size(); ++g)
            for (int rr = 0; rr < R; ++rr)
                if (x[vars.m[g][rr]] > 0.5) r[g] = rr;
        return r;
    };

    bb::Callback cb = [&](const bb::CallbackContext& ctx) -> bb::CallbackResult {
        bb::CallbackResult res;
        double qbar = ctx.x[vars.q];
        if (!ctx.integral) {
            std::vector<double> dem(inst.gaps.size(), 0.0);
            for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
                double b = inst.gaps[g].daily_generation.to_double();
                for (int r = 0; r < R; ++r)
                    dem[g] += b * inst.visit_combinations[r].beta * ctx.x[vars.m[g][r]];
            }
            LpAllocation lp = solve_subproblem_lp_fractional(combos, dem);
            if (!lp.feasible) {
                Cut c = gen_feasibility_cut(lp, iter_counter);
                double lhs = 0;
                for (std::size_t g = 0; g < inst.gaps.size(); ++g)
                    lhs += c.gamma[g] + c.delta[g] * dem[g];
                if (lhs > 1e-6) {
                    out.cuts.push_back(c);
                    res.cuts.push_back({cut_row(c, inst, vars), bb::CutKind::feasibility});
                }
            } else if (lp.value > qbar + 1e-6) {
                Cut c = gen_optimality_cut(lp, iter_counter);
                out.cuts.push_back(c);
                res.cuts.push_back({cut_row(c, inst, vars), bb::CutKind::optimality});
            }
            return res;
        }

        ++iter_counter;
        std::vector<int> assignment = extract_assignment(ctx.x);
        std::vector<Fixed> demands = demands_for(inst, assignment);
        LpAllocation lp = solve_subproblem_lp(combos, demands);
        IterationRow row;
        row.node = ctx.node_id;
        row.routing_part = ctx.master_part;
        if (!lp.feasible) {
            Cut c = gen_feasibility_cut(lp, iter_counter);
            out.cuts.push_back(c);
            res.cuts.push_back({cut_row(c, inst, vars), bb::CutKind::feasibility});
            res.subproblem_infeasible = true;
            for (int g : lp.infeasible_gaps) uncoverable_seen.insert(g);
            row.sp_lp = lp::kInf;
            row.sp_heur = lp::kInf;
            row.cuts = "feasibility";
            iter_rows.push_back(std::move(row));
            return res;
        }
        row.sp_lp = lp.value;
        IntAllocation heur = heuristic_round(combos, lp);
        row.sp_heur = heur.value.to_double();
        std::string cuts_str;
        if (lp.value > qbar + 1e-6) {
            Cut c = gen_optimality_cut(lp, iter_counter);
            out.cuts.push_back(c);
            res.cuts.push_back({cut_row(c, inst, vars), bb::CutKind::optimality});
            cuts_str = "optimality";
        }
        if (options.lshaped) {
            IntAllocation exact = solve_subproblem_int(combos, demands);
            row.has_sp_int = true;
            row.sp_int = exact.value.to_double();
            if (exact.value.to_double() > qbar + 1e-6) {
                Cut c = gen_lshaped_cut(assignment, exact.value.to_double(), glb.value.to_double(),
                                        iter_counter);
                out.cuts.push_back(c);
                res.cuts.push_back({cut_row(c, inst, vars), bb::CutKind::lshaped});
                cuts_str += cuts_str.empty() ? "lshaped" : "+lshaped";
            }
        }
        row.cuts = cuts_str;
        iter_rows.push_back(std::move(row));
        res.subproblem_lb = lp.value;
        res.heuristic_ub = heur.value.to_double();
        return res;
    };

    bb::Options bopt;
    bopt.node_limit = options.node_limit;
    bopt.time_limit_s = options.time_limit_s;
    bopt.cuts_at_fractional = options.cuts_at_fractional;
    bopt.incumbent_var = vars.q;
    for (std::size_t g = 0; g < inst.gaps.size(); ++g)
        for (int r = 0; r < R; ++r) bopt.completion_vars.push_back(vars.m[g][r]);

    bb::Result tree = bb::solve(built.model, bopt, &cb);

    rep.stats.nodes = tree.stats.nodes;
    rep.stats.lp_solves = tree.stats.lp_solves;
    rep.stats.master_iterations = tree.stats.callback_calls;
    rep.stats.cuts_optimality = tree.stats.cuts_optimality;
    rep.stats.cuts_feasibility = tree.stats.cuts_feasibility;
    rep.stats.cuts_lshaped = tree.stats.cuts_lshaped;
    rep.stats.cuts_partial = tree.stats.cuts_partial;
    rep.stats.open_solutions = tree.stats.open_solutions;
    rep.iterations = iter_rows;
    for (const bb::TraceRow& t : tree.trace) rep.trace.push_back({t.iteration, t.lb, t.ub});

    if (tree.status == bb::SolveStatus::infeasible) {
        rep.status = SolveStatus::infeasible;
        if (!uncoverable_seen.empty()) {
            std::string ids;
            for (int g : uncoverable_seen) ids += (ids.empty() ? "" : ",") + std::to_string(g);
            rep.note = "feasibility cuts exclude every visit pattern for gap(s) " + ids;
        } else {
            rep.note = "master exhausted without a feasible completion";
        }
        return out;
    }

    // map pool assignments (over all binaries) back to visit choices
    auto decode = [&](const std::vector<signed char>& assignment) {
        std::vector<int> r(inst.gaps.size(), -1);
        for (std::size_t k = 0; k < tree.binary_vars.size(); ++k) {
            if (assignment[k] == 0) continue;
            int var = tree.binary_vars[k];
            for (std::size_t g = 0; g < inst.gaps.size(); ++g)
                for (int rr = 0; rr < R; ++rr)
                    if (vars.m[g][rr] == var) r[g] = rr;
        }
        return r;
    };

    auto exact_fn = [&](const bb::OpenSolution& open) -> std::optional<double> {
        IntAllocation ia = solve_subproblem_int(combos, demands_for(inst, decode(open.assignment)));
        if (!ia.feasible) return std::nullopt;
        return ia.value.to_double();
    };
    bb::PostProcessOutcome pp = bb::post_process(tree.pool, tree.incumbent_value, exact_fn);
    rep.stats.postproc_iterations = pp.iterations;
    rep.stats.postproc_skipped = pp.skipped;
    for (const bb::PoolRow& r : pp.rows)
        rep.pool.push_back({r.lb, r.heuristic_ub, r.processed, r.processed ? r.exact_total : 0.0, r.node_id});

    const std::vector<signed char>* win_assignment = nullptr;
    if (pp.winner >= 0) {
        win_assignment = &tree.pool[pp.winner].assignment;
    } else if (tree.has_incumbent) {
        win_assignment = &tree.incumbent_assignment;
    }
    rep.status = tree.status == bb::SolveStatus::dnf ? SolveStatus::dnf : SolveStatus::optimal;
    if (!win_assignment) {
        rep.note = "no feasible completion within the budget";
        rep.best_bound = tree.best_bound;
        return out;
    }

    std::vector<int> r_star = decode(*win_assignment);
    IntAllocation alloc = solve_subproblem_int(combos, demands_for(inst, r_star));
    if (!alloc.feasible) throw std::logic_error("winning assignment lost subproblem feasibility");

    std::vector<double> xfull(built.model.num_variables(), 0.0);
    for (std::size_t k = 0; k < tree.binary_vars.size(); ++k)
        xfull[tree.binary_vars[k]] = (*win_assignment)[k];
    rep.routes = mip::extract_routes(inst, vars, [&](int var) { return xfull[var]; });
    double routing = 0;
    for (const Route& r : rep.routes)
        for (auto [i, j] : r.arcs) routing += inst.alpha.to_double() * inst.arc_time(i, j);
    rep.routing_cost = routing;
    rep.bin_cost = alloc.value.to_double();
    rep.objective = rep.routing_cost + rep.bin_cost;
    rep.bins = alloc.plan;
    rep.visits = r_star;
    rep.best_bound = rep.status == SolveStatus::optimal ? rep.objective : tree.best_bound;
    rep.trace.push_back({static_cast<long>(rep.trace.size()) + 1, rep.best_bound, rep.objective});
    return out;
}

}  // namespace msw::benders
