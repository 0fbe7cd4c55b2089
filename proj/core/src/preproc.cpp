#include "msw/preproc.hpp"

#include <algorithm>

namespace msw {

namespace {

void sum_counts(const std::vector<BinType>& types, const std::vector<int>& counts, BinCombination& out) {
    out.joint_cost = Fixed{};
    out.joint_capacity = Fixed{};
    out.joint_area = Fixed{};
    for (std::size_t p = 0; p < counts.size(); ++p) {
        out.joint_cost += types[p].daily_cost * counts[p];
        out.joint_capacity += types[p].capacity * counts[p];
        out.joint_area += types[p].area * counts[p];
    }
}

// a dominates b: no worse in both criteria, strictly better in one.
bool dominates(const BinCombination& a, const BinCombination& b) {
    return a.joint_cost <= b.joint_cost && a.joint_capacity >= b.joint_capacity &&
           (a.joint_cost < b.joint_cost || a.joint_capacity > b.joint_capacity);
}

// Recursive front of a slice sorted by descending capacity: the top half
// can only dominate the bottom half, never the other way round.
std::vector<BinCombination> front(std::vector<BinCombination> h) {
    if (h.size() <= 1) return h;
    std::size_t mid = h.size() / 2;
    std::vector<BinCombination> top = front({h.begin(), h.begin() + mid});
    std::vector<BinCombination> bottom = front({h.begin() + mid, h.end()});
    std::vector<BinCombination> merged = top;
    for (const BinCombination& b : bottom) {
        bool dominated = false;
        for (const BinCombination& t : top)
            if (dominates(t, b)) {
                dominated = true;
                break;
            }
        if (!dominated) merged.push_back(b);
    }
    return merged;
}

// Sort key used before running the front: descending capacity, then
// ascending cost, then lexicographic multiset so duplicates collapse
// deterministically.
bool capacity_order(const BinCombination& a, const BinCombination& b) {
    if (a.joint_capacity != b.joint_capacity) return a.joint_capacity > b.joint_capacity;
    if (a.joint_cost != b.joint_cost) return a.joint_cost < b.joint_cost;
    return a.counts < b.counts;
}

}  // namespace

std::vector<BinCombination> enumerate_feasible(const std::vector<BinType>& bin_types, Fixed space,
                                               std::vector<std::string>* warnings) {
    if (bin_types.empty()) throw ValidationError("bin catalog is empty");
    if (space <= Fixed{}) throw ValidationError("available space must be > 0");
    Fixed min_area = bin_types.front().area;
    for (const BinType& b : bin_types) min_area = std::min(min_area, b.area);
    if (min_area > space) {
        if (warnings) warnings->push_back("no bin fits in " + space.str() + " m2");
        return {};
    }
    std::int64_t max_bins = space.raw() / min_area.raw();

    std::vector<BinCombination> out;
    std::vector<int> counts(bin_types.size(), 0);
    // Combinations with repetition by non-decreasing type index; the index
    // recursion of the reference procedure visits permutations of the same
    // multiset, which we collapse by construction.
    auto fill = [&](auto&& self, std::size_t start, std::int64_t remaining, Fixed used) -> void {
        if (remaining == 0) return;
        for (std::size_t p = start; p < bin_types.size(); ++p) {
            Fixed next = used + bin_types[p].area;
            if (next > space) continue;
            ++counts[p];
            BinCombination combo;
            combo.counts = counts;
            sum_counts(bin_types, counts, combo);
            out.push_back(std::move(combo));
            self(self, p, remaining - 1, next);
            --counts[p];
        }
    };
    fill(fill, 0, max_bins, Fixed{});
    return out;
}

std::vector<BinCombination> pareto_front(std::vector<BinCombination> combinations) {
    if (combinations.empty()) throw ValidationError("pareto_front needs a nonempty input");
    std::sort(combinations.begin(), combinations.end(), capacity_order);
    // Exact (cost, capacity) ties: keep the lexicographically smallest
    // multiset, drop the rest before the front pass.
    combinations.erase(std::unique(combinations.begin(), combinations.end(),
                                   [](const BinCombination& a, const BinCombination& b) {
                                       return a.joint_cost == b.joint_cost &&
                                              a.joint_capacity == b.joint_capacity;
                                   }),
                       combinations.end());
    std::vector<BinCombination> result = front(std::move(combinations));
    std::sort(result.begin(), result.end(), [](const BinCombination& a, const BinCombination& b) {
        return a.joint_cost < b.joint_cost;
    });
    return result;
}

std::vector<BinCombination> preprocess(const std::vector<BinType>& bin_types, Fixed space) {
    std::vector<BinCombination> feasible = enumerate_feasible(bin_types, space);
    if (feasible.empty()) throw ValidationError("GAP cannot host any bin (space " + space.str() + " m2)");
    std::vector<BinCombination> result = pareto_front(std::move(feasible));
    for (std::size_t k = 0; k < result.size(); ++k) result[k].id = static_cast<int>(k);
    return result;
}

std::vector<std::vector<BinCombination>> combos_per_gap(const Instance& inst) {
    std::vector<std::vector<BinCombination>> out;
    out.reserve(inst.gaps.size());
    for (const Gap& g : inst.gaps) {
        try {
            out.push_back(preprocess(inst.bin_types, g.available_space));
        } catch (const ValidationError& e) {
            throw ValidationError("gap " + std::to_string(g.id) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace msw
