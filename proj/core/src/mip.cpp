#include "msw/mip.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "msw/bb.hpp"

namespace msw::mip {

int ModelVars::arc_index(int i, int j) const {
    for (std::size_t a = 0; a < arcs.size(); ++a)
        if (arcs[a].first == i && arcs[a].second == j) return static_cast<int>(a);
    return -1;
}

BuiltModel build_routing_model(const Instance& inst, const CombosPerGap& combos, const BuildConfig& config) {
    if (combos.size() != inst.gaps.size())
        throw ValidationError("combos_per_gap size does not match the instance");
    for (std::size_t g = 0; g < combos.size(); ++g)
        if (combos[g].empty())
            throw ValidationError("gap " + std::to_string(g + 1) + " has an empty combination list");

    BuiltModel built;
    lp::LpModel& mod = built.model;
    ModelVars& vars = built.vars;
    const int nodes = inst.node_count();
    const int L = inst.vehicle_count;
    const int T = inst.horizon_days;
    const int R = static_cast<int>(inst.visit_combinations.size());
    const double alpha = inst.alpha.to_double();
    const double Q = inst.vehicle_capacity.to_double();

    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j)
            if (i != j) vars.arcs.emplace_back(i, j);
    const int A = static_cast<int>(vars.arcs.size());

    vars.x.assign(A, std::vector<std::vector<int>>(L, std::vector<int>(T, -1)));
    vars.v = vars.x;
    for (int a = 0; a < A; ++a) {
        auto [i, j] = vars.arcs[a];
        double time_cost = alpha * inst.arc_time(i, j);
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t) {
                std::string tag = std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(l) +
                                  "_" + std::to_string(t);
                vars.x[a][l][t] = mod.add_variable("x_" + tag, 0, 1, time_cost, true);
            }
    }
    for (int a = 0; a < A; ++a) {
        auto [i, j] = vars.arcs[a];
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t) {
                std::string tag = std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(l) +
                                  "_" + std::to_string(t);
                vars.v[a][l][t] = mod.add_variable("v_" + tag, 0, lp::kInf, 0, false);
            }
    }
    vars.m.assign(inst.gaps.size(), std::vector<int>(R, -1));
    for (std::size_t g = 0; g < inst.gaps.size(); ++g)
        for (int r = 0; r < R; ++r)
            vars.m[g][r] =
                mod.add_variable("m_" + std::to_string(g + 1) + "_" + std::to_string(r), 0, 1, 0, true);
    if (config.allocation) {
        vars.n.assign(inst.gaps.size(), {});
        for (std::size_t g = 0; g < inst.gaps.size(); ++g)
            for (const BinCombination& u : combos[g])
                vars.n[g].push_back(mod.add_variable("n_" + std::to_string(g + 1) + "_" + std::to_string(u.id),
                                                     0, 1, u.joint_cost.to_double(), true));
    }
    if (config.master_q) vars.q = mod.add_variable("q", config.q_lb, lp::kInf, 1.0, false);
    if (config.partial) {
        vars.n_relaxed.assign(inst.gaps.size(), {});
        for (std::size_t g = 0; g < inst.gaps.size(); ++g)
            for (const BinCombination& u : combos[g])
                vars.n_relaxed[g].push_back(mod.add_variable(
                    "np_" + std::to_string(g + 1) + "_" + std::to_string(u.id), 0, 1, 0, false));
    }

    // installed capacity covers the accumulation between visits
    auto capacity_rows = [&](const std::vector<std::vector<int>>& nvars, const char* prefix) {
        for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
            lp::Row row;
            row.name = std::string(prefix) + "cap_" + std::to_string(g + 1);
            row.sense = lp::Sense::ge;
            row.rhs = 0;
            for (std::size_t u = 0; u < combos[g].size(); ++u)
                row.coeffs.emplace_back(nvars[g][u], combos[g][u].joint_capacity.to_double());
            double b = inst.gaps[g].daily_generation.to_double();
            for (int r = 0; r < R; ++r)
                row.coeffs.emplace_back(vars.m[g][r], -b * inst.visit_combinations[r].beta);
            mod.add_row(std::move(row));
        }
        for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
            lp::Row row;
            row.name = std::string(prefix) + "onecombo_" + std::to_string(g + 1);
            row.sense = lp::Sense::eq;
            row.rhs = 1;
            for (int var : nvars[g]) row.coeffs.emplace_back(var, 1.0);
            mod.add_row(std::move(row));
        }
    };
    if (config.allocation) capacity_rows(vars.n, "");
    if (config.partial) {
        capacity_rows(vars.n_relaxed, "p");
        lp::Row link;
        link.name = "q_link";
        link.sense = lp::Sense::ge;
        link.rhs = 0;
        link.coeffs.emplace_back(vars.q, 1.0);
        for (std::size_t g = 0; g < inst.gaps.size(); ++g)
            for (std::size_t u = 0; u < combos[g].size(); ++u)
                link.coeffs.emplace_back(vars.n_relaxed[g][u], -combos[g][u].joint_cost.to_double());
        mod.add_row(std::move(link));
    }
    // exactly one visit combination per GAP
    for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
        lp::Row row;
        row.name = "onevisit_" + std::to_string(g + 1);
        row.sense = lp::Sense::eq;
        row.rhs = 1;
        for (int var : vars.m[g]) row.coeffs.emplace_back(var, 1.0);
        mod.add_row(std::move(row));
    }
    // a GAP is left exactly on its visit days
    for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
        int i = static_cast<int>(g) + 1;
        for (int t = 0; t < T; ++t) {
            lp::Row row;
            row.name = "visitday_" + std::to_string(i) + "_" + std::to_string(t);
            row.sense = lp::Sense::eq;
            row.rhs = 0;
            for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a)
                if (vars.arcs[a].first == i)
                    for (int l = 0; l < L; ++l) row.coeffs.emplace_back(vars.x[a][l][t], 1.0);
            for (int r = 0; r < R; ++r)
                if (inst.visit_combinations[r].visits_on(t)) row.coeffs.emplace_back(vars.m[g][r], -1.0);
            mod.add_row(std::move(row));
        }
    }
    // per-vehicle flow conservation at every node
    for (int q = 0; q < nodes; ++q)
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t) {
                lp::Row row;
                row.name = "flow_" + std::to_string(q) + "_" + std::to_string(l) + "_" + std::to_string(t);
                row.sense = lp::Sense::eq;
                row.rhs = 0;
                for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a) {
                    if (vars.arcs[a].second == q) row.coeffs.emplace_back(vars.x[a][l][t], 1.0);
                    if (vars.arcs[a].first == q) row.coeffs.emplace_back(vars.x[a][l][t], -1.0);
                }
                mod.add_row(std::move(row));
            }
    // each vehicle leaves the depot at most once a day
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            lp::Row row;
            row.name = "depart_" + std::to_string(l) + "_" + std::to_string(t);
            row.sense = lp::Sense::le;
            row.rhs = 1;
            for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a)
                if (vars.arcs[a].first == 0) row.coeffs.emplace_back(vars.x[a][l][t], 1.0);
            mod.add_row(std::move(row));
        }
    // working-day duration
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            lp::Row row;
            row.name = "duration_" + std::to_string(l) + "_" + std::to_string(t);
            row.sense = lp::Sense::le;
            row.rhs = inst.time_limit;
            for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a) {
                auto [i, j] = vars.arcs[a];
                row.coeffs.emplace_back(vars.x[a][l][t], inst.arc_time(i, j));
            }
            mod.add_row(std::move(row));
        }
    // arc load only on used arcs, within vehicle capacity
    for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a)
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t) {
                lp::Row row;
                row.name = "load_" + std::to_string(a) + "_" + std::to_string(l) + "_" + std::to_string(t);
                row.sense = lp::Sense::le;
                row.rhs = 0;
                row.coeffs.emplace_back(vars.v[a][l][t], 1.0);
                row.coeffs.emplace_back(vars.x[a][l][t], -Q);
                mod.add_row(std::move(row));
            }
    // load propagation: outbound = inbound + pickup when visited; the same
    // rows exclude subtours for positive pickups
    for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
        int j = static_cast<int>(g) + 1;
        double b = inst.gaps[g].daily_generation.to_double();
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t) {
                lp::Row row;
                row.name = "loadflow_" + std::to_string(j) + "_" + std::to_string(l) + "_" + std::to_string(t);
                row.sense = lp::Sense::le;
                row.rhs = Q;
                for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a) {
                    if (vars.arcs[a].second == j) {
                        row.coeffs.emplace_back(vars.v[a][l][t], 1.0);
                        row.coeffs.emplace_back(vars.x[a][l][t], Q);
                    }
                    if (vars.arcs[a].first == j) row.coeffs.emplace_back(vars.v[a][l][t], -1.0);
                }
                for (int r = 0; r < static_cast<int>(inst.visit_combinations.size()); ++r)
                    row.coeffs.emplace_back(vars.m[g][r], b * inst.visit_combinations[r].beta);
                mod.add_row(std::move(row));
            }
    }
    return built;
}

BuiltModel build_full(const Instance& inst, const CombosPerGap& combos) {
    return build_routing_model(inst, combos, BuildConfig{});
}

void add_valid_inequalities(BuiltModel& built, const Instance& inst) {
    lp::LpModel& mod = built.model;
    ModelVars& vars = built.vars;
    const int L = inst.vehicle_count;
    const int T = inst.horizon_days;

    // vehicles start their tour unloaded
    for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a) {
        if (vars.arcs[a].first != 0) continue;
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t) mod.variable(vars.v[a][l][t]).ub = 0;
    }
    // vehicle l leaves the depot only if vehicle l-1 does
    for (int l = 1; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            lp::Row row;
            row.name = "order_" + std::to_string(l) + "_" + std::to_string(t);
            row.sense = lp::Sense::le;
            row.rhs = 0;
            for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a) {
                if (vars.arcs[a].first != 0) continue;
                row.coeffs.emplace_back(vars.x[a][l][t], 1.0);
                row.coeffs.emplace_back(vars.x[a][l - 1][t], -1.0);
            }
            mod.add_row(std::move(row));
        }
    // only the first vehicle may serve the GAP furthest from the depot
    int furthest = 1;
    for (int j = 2; j < inst.node_count(); ++j)
        if (inst.travel[0][j] > inst.travel[0][furthest]) furthest = j;
    for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a) {
        if (vars.arcs[a].second != furthest) continue;
        for (int l = 1; l < L; ++l)
            for (int t = 0; t < T; ++t) mod.variable(vars.x[a][l][t]).ub = 0;
    }
}

std::vector<Route> extract_routes(const Instance& inst, const ModelVars& vars,
                                  const std::function<double(int)>& value) {
    const int L = inst.vehicle_count;
    const int T = inst.horizon_days;
    const int nodes = inst.node_count();
    std::vector<Route> routes;
    std::set<std::tuple<int, int, int>> consumed;  // (arc, l, t)
    long active = 0;
    for (int a = 0; a < static_cast<int>(vars.arcs.size()); ++a)
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t)
                if (value(vars.x[a][l][t]) > 0.5) ++active;

    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            int start = -1;
            for (int j = 1; j < nodes; ++j) {
                int a = vars.arc_index(0, j);
                if (value(vars.x[a][l][t]) > 0.5) {
                    start = j;
                    break;
                }
            }
            if (start < 0) continue;
            Route route;
            route.vehicle = l;
            route.day = t;
            route.arcs.emplace_back(0, start);
            consumed.insert({vars.arc_index(0, start), l, t});
            int cur = start;
            int steps = 0;
            while (cur != 0) {
                if (++steps > nodes + 1)
                    throw std::runtime_error("route extraction: walk does not return to the depot");
                int next = -1;
                for (int k = 0; k < nodes; ++k) {
                    if (k == cur) continue;
                    int a = vars.arc_index(cur, k);
                    if (value(vars.x[a][l][t]) > 0.5) {
                        next = k;
                        break;  // ascending head index
                    }
                }
                if (next < 0) throw std::runtime_error("route extraction: flow is not conserved");
                route.arcs.emplace_back(cur, next);
                consumed.insert({vars.arc_index(cur, next), l, t});
                cur = next;
            }
            routes.push_back(std::move(route));
        }
    if (static_cast<long>(consumed.size()) != active)
        throw std::runtime_error("route extraction: active arcs remain outside every depot tour");
    return routes;
}

SolveReport solve_full(const Instance& inst, const CombosPerGap& combos, const FullSolveOptions& options) {
    BuiltModel built = build_full(inst, combos);
    if (options.vis) add_valid_inequalities(built, inst);

    bb::Options opt;
    opt.node_limit = options.node_limit;
    opt.time_limit_s = options.time_limit_s;
    bb::Result res = bb::solve(built.model, opt, nullptr);

    SolveReport rep;
    rep.instance = inst.name;
    rep.method = "mip";
    rep.options = options.vis ? "vis" : "";
    rep.stats.nodes = res.stats.nodes;
    rep.stats.lp_solves = res.stats.lp_solves;
    rep.best_bound = res.best_bound;
    for (const bb::TraceRow& t : res.trace) rep.trace.push_back({t.iteration, t.lb, t.ub});

    switch (res.status) {
        case bb::SolveStatus::optimal: rep.status = SolveStatus::optimal; break;
        case bb::SolveStatus::infeasible: rep.status = SolveStatus::infeasible; break;
        case bb::SolveStatus::dnf: rep.status = SolveStatus::dnf; break;
    }
    if (rep.status == SolveStatus::infeasible) {
        rep.note = "no integer solution; the tree was exhausted without a feasible completion";
        return rep;
    }
    if (!res.has_incumbent) return rep;  // dnf without a solution

    const auto& x = res.incumbent_x;
    rep.routes = extract_routes(inst, built.vars, [&](int var) { return x[var]; });
    double routing = 0;
    for (const Route& r : rep.routes)
        for (auto [i, j] : r.arcs) routing += inst.alpha.to_double() * inst.arc_time(i, j);
    Fixed bin_cost;
    for (std::size_t g = 0; g < inst.gaps.size(); ++g) {
        int chosen = -1;
        for (std::size_t u = 0; u < built.vars.n[g].size(); ++u)
            if (x[built.vars.n[g][u]] > 0.5) chosen = static_cast<int>(u);
        int visit = -1;
        for (std::size_t r = 0; r < built.vars.m[g].size(); ++r)
            if (x[built.vars.m[g][r]] > 0.5) visit = static_cast<int>(r);
        if (chosen < 0 || visit < 0) throw std::runtime_error("incumbent lacks a combination assignment");
        rep.bins.push_back(chosen);
        rep.visits.push_back(visit);
        bin_cost += combos[g][chosen].joint_cost;
    }
    rep.routing_cost = routing;
    rep.bin_cost = bin_cost.to_double();
    // clean recomputed split; the tree value matches it within LP tolerance
    rep.objective = rep.routing_cost + rep.bin_cost;
    return rep;
}

namespace {

struct RouteSim {
    double duration = 0;
    Fixed load;
    std::vector<int> visited;
};

}  // namespace

std::vector<std::string> check_report(const Instance& inst, const CombosPerGap& combos,
                                      const SolveReport& rep) {
    std::vector<std::string> bad;
    auto fail = [&](std::string msg) { bad.push_back(std::move(msg)); };

    if (rep.status == SolveStatus::infeasible) {
        fail("report carries no solution (status infeasible)");
        return bad;
    }
    const std::size_t N = inst.gaps.size();
    if (rep.bins.size() != N || rep.visits.size() != N) {
        fail("bins/visits must list every gap exactly once");
        return bad;
    }
    const int R = static_cast<int>(inst.visit_combinations.size());
    for (std::size_t g = 0; g < N; ++g) {
        if (rep.visits[g] < 0 || rep.visits[g] >= R) {
            fail("gap " + std::to_string(g + 1) + ": visit combination id out of range");
            return bad;
        }
        if (rep.bins[g] < 0 || rep.bins[g] >= static_cast<int>(combos[g].size())) {
            fail("gap " + std::to_string(g + 1) + ": bin combination id out of range");
            return bad;
        }
        const VisitCombination& r = inst.visit_combinations[rep.visits[g]];
        Fixed demand = inst.gaps[g].daily_generation * r.beta;
        if (combos[g][rep.bins[g]].joint_capacity < demand)
            fail("gap " + std::to_string(g + 1) + ": installed capacity " +
                 combos[g][rep.bins[g]].joint_capacity.str() + " below accumulation " + demand.str());
    }

    std::set<std::pair<int, int>> vehicle_days;
    std::vector<std::set<int>> visited_on_day(inst.horizon_days);
    double routing = 0;
    for (const Route& route : rep.routes) {
        std::string where =
            "vehicle " + std::to_string(route.vehicle) + " day " + std::to_string(route.day + 1);
        if (route.vehicle < 0 || route.vehicle >= inst.vehicle_count) {
            fail(where + ": no such vehicle");
            continue;
        }
        if (route.day < 0 || route.day >= inst.horizon_days) {
            fail(where + ": day outside horizon");
            continue;
        }
        if (!vehicle_days.insert({route.vehicle, route.day}).second) {
            fail(where + ": vehicle used more than once that day");
            continue;
        }
        if (route.arcs.empty()) {
            fail(where + ": empty arc list");
            continue;
        }
        if (route.arcs.front().first != 0) fail(where + ": tour must start at the depot");
        if (route.arcs.back().second != 0) fail(where + ": tour must end at the depot");
        RouteSim sim;
        int prev_to = 0;
        bool shape_ok = true;
        for (std::size_t k = 0; k < route.arcs.size(); ++k) {
            auto [i, j] = route.arcs[k];
            if (i < 0 || i >= inst.node_count() || j < 0 || j >= inst.node_count() || i == j) {
                fail(where + ": invalid arc");
                shape_ok = false;
                break;
            }
            if (k > 0 && i != prev_to) {
                fail(where + ": arcs do not chain (" + std::to_string(prev_to) + " then " +
                     std::to_string(i) + ")");
                shape_ok = false;
                break;
            }
            if (k > 0 && i == 0) {
                fail(where + ": tour passes through the depot mid-route");
                shape_ok = false;
                break;
            }
            prev_to = j;
            sim.duration += inst.arc_time(i, j);
            if (j != 0) sim.visited.push_back(j);
        }
        if (!shape_ok) continue;
        std::set<int> unique_stops(sim.visited.begin(), sim.visited.end());
        if (unique_stops.size() != sim.visited.size()) {
            fail(where + ": a GAP is visited twice in one tour");
            continue;
        }
        for (int g : sim.visited) {
            if (!visited_on_day[route.day].insert(g).second)
                fail("gap " + std::to_string(g) + " visited by two vehicles on day " +
                     std::to_string(route.day + 1));
            sim.load += inst.gaps[g - 1].daily_generation * inst.visit_combinations[rep.visits[g - 1]].beta;
        }
        if (sim.duration > inst.time_limit + 1e-6)
            fail(where + ": duration " + std::to_string(sim.duration) + " exceeds the time limit");
        if (sim.load > inst.vehicle_capacity)
            fail(where + ": collected " + sim.load.str() + " m3 exceeds vehicle capacity " +
                 inst.vehicle_capacity.str());
        routing += inst.alpha.to_double() * sim.duration;
    }

    for (std::size_t g = 0; g < N; ++g) {
        const VisitCombination& r = inst.visit_combinations[rep.visits[g]];
        for (int t = 0; t < inst.horizon_days; ++t) {
            bool should = r.visits_on(t);
            bool did = visited_on_day[t].count(static_cast<int>(g) + 1) > 0;
            if (should != did)
                fail("gap " + std::to_string(g + 1) + ": day " + std::to_string(t + 1) +
                     (should ? " visit missing" : " visited off-schedule"));
        }
    }

    Fixed bins;
    for (std::size_t g = 0; g < N; ++g) bins += combos[g][rep.bins[g]].joint_cost;
    if (std::fabs(routing - rep.routing_cost) > 1e-6)
        fail("routing cost mismatch: recomputed " + std::to_string(routing) + " reported " +
             std::to_string(rep.routing_cost));
    if (std::fabs(bins.to_double() - rep.bin_cost) > 1e-6)
        fail("bin cost mismatch: recomputed " + bins.str() + " reported " + std::to_string(rep.bin_cost));
    if (std::fabs(rep.routing_cost + rep.bin_cost - rep.objective) > 1e-6)
        fail("objective does not equal routing_cost + bin_cost");
    return bad;
}

}  // namespace msw::mip
