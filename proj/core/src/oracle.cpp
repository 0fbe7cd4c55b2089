#include "msw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msw::oracle {

namespace {

struct DayPlan {
    double cost = 0;
    std::vector<std::vector<int>> tours;  // gap node ids in visit order
};

// Cheapest split of `required` into at most `max_tours` ordered tours
// respecting capacity and duration. Every (partition, order) pair is
// generated once by inserting each GAP at every position of every tour or
// as a new tour.
class DayEnumerator {
public:
    DayEnumerator(const Instance& inst, const std::vector<Fixed>& pickups, int max_tours)
        : inst_(inst), pickups_(pickups), max_tours_(max_tours) {}

    DayPlan best(const std::vector<int>& required) {
        best_.cost = std::numeric_limits<double>::infinity();
        best_.tours.clear();
        tours_.clear();
        place(required, 0);
        return best_;
    }

private:
    void place(const std::vector<int>& required, std::size_t k) {
        if (k == required.size()) {
            evaluate();
            return;
        }
        int g = required[k];
        for (std::size_t t = 0; t < tours_.size(); ++t) {
            for (std::size_t pos = 0; pos <= tours_[t].size(); ++pos) {
                tours_[t].insert(tours_[t].begin() + pos, g);
                place(required, k + 1);
                tours_[t].erase(tours_[t].begin() + pos);
            }
        }
        if (static_cast<int>(tours_.size()) < max_tours_) {
            tours_.push_back({g});
            place(required, k + 1);
            tours_.pop_back();
        }
    }

    void evaluate() {
        double total = 0;
        for (const auto& tour : tours_) {
            Fixed load;
            double duration = 0;
            int prev = 0;
            for (int g : tour) {
                load += pickups_[g - 1];
                duration += inst_.arc_time(prev, g);
                prev = g;
            }
            duration += inst_.arc_time(prev, 0);
            if (load > inst_.vehicle_capacity) return;
            if (duration > inst_.time_limit + 1e-9) return;
            total += inst_.alpha.to_double() * duration;
        }
        if (total < best_.cost) {
            best_.cost = total;
            best_.tours = tours_;
            std::sort(best_.tours.begin(), best_.tours.end());
        }
    }

    const Instance& inst_;
    const std::vector<Fixed>& pickups_;
    int max_tours_;
    std::vector<std::vector<int>> tours_;
    DayPlan best_;
};

}  // namespace

SolveReport brute_force(const Instance& inst, const mip::CombosPerGap& combos, const Limits& limits) {
    if (inst.gap_count() > limits.max_gaps)
        throw std::invalid_argument("oracle refuses instances with more than " +
                                    std::to_string(limits.max_gaps) + " GAPs");
    if (inst.horizon_days > limits.max_days)
        throw std::invalid_argument("oracle refuses horizons longer than " +
                                    std::to_string(limits.max_days) + " days");

    const std::size_t N = inst.gaps.size();
    const int R = static_cast<int>(inst.visit_combinations.size());

    SolveReport rep;
    rep.instance = inst.name;
    rep.method = "oracle";
    double best_total = std::numeric_limits<double>::infinity();
    std::vector<int> best_assignment;
    std::vector<int> best_plan;
    std::vector<DayPlan> best_days;

    std::vector<int> assignment(N, 0);
    bool exhausted = N == 0;
    while (!exhausted) {
        // cheapest covering combination per GAP under this visit choice
        bool coverable = true;
        std::vector<int> plan(N, -1);
        Fixed bin_cost;
        std::vector<Fixed> pickups(N);
        for (std::size_t g = 0; g < N && coverable; ++g) {
            Fixed demand = inst.gaps[g].daily_generation * inst.visit_combinations[assignment[g]].beta;
            pickups[g] = demand;
            coverable = false;
            for (const BinCombination& u : combos[g])
                if (u.joint_capacity >= demand) {
                    plan[g] = u.id;
                    bin_cost += u.joint_cost;
                    coverable = true;
                    break;
                }
        }
        if (coverable) {
            double total = bin_cost.to_double();
            std::vector<DayPlan> days(inst.horizon_days);
            bool routable = true;
            DayEnumerator days_enum(inst, pickups, inst.vehicle_count);
            for (int t = 0; t < inst.horizon_days && routable; ++t) {
                std::vector<int> required;
                for (std::size_t g = 0; g < N; ++g)
                    if (inst.visit_combinations[assignment[g]].visits_on(t))
                        required.push_back(static_cast<int>(g) + 1);
                if (required.empty()) continue;
                days[t] = days_enum.best(required);
                if (!std::isfinite(days[t].cost)) routable = false;
                total += days[t].cost;
            }
            if (routable && total < best_total - 1e-12) {
                best_total = total;
                best_assignment = assignment;
                best_plan = plan;
                best_days = days;
            }
        }

        // next assignment in lexicographic order
        std::size_t g = N;
        while (g > 0) {
            --g;
            if (++assignment[g] < R) break;
            assignment[g] = 0;
            if (g == 0) exhausted = true;
        }
    }

    if (best_assignment.empty()) {
        rep.status = SolveStatus::infeasible;
        rep.note = "exhaustive search found no feasible assignment";
        return rep;
    }
    rep.status = SolveStatus::optimal;
    rep.visits = best_assignment;
    rep.bins = best_plan;
    double routing = 0;
    for (int t = 0; t < inst.horizon_days; ++t) {
        if (t >= static_cast<int>(best_days.size())) break;
        int vehicle = 0;
        for (const auto& tour : best_days[t].tours) {
            Route route;
            route.vehicle = vehicle++;
            route.day = t;
            int prev = 0;
            for (int g : tour) {
                route.arcs.emplace_back(prev, g);
                routing += inst.alpha.to_double() * inst.arc_time(prev, g);
                prev = g;
            }
            route.arcs.emplace_back(prev, 0);
            routing += inst.alpha.to_double() * inst.arc_time(prev, 0);
            rep.routes.push_back(std::move(route));
        }
    }
    rep.routing_cost = routing;
    Fixed bins;
    for (std::size_t g = 0; g < N; ++g) {
        for (const BinCombination& u : combos[g])
            if (u.id == best_plan[g]) bins += u.joint_cost;
    }
    rep.bin_cost = bins.to_double();
    rep.objective = rep.routing_cost + rep.bin_cost;
    rep.best_bound = rep.objective;
    return rep;
}

}  // namespace msw::oracle
