#ifndef MSW_PREPROC_HPP
#define MSW_PREPROC_HPP

#include <vector>

#include "msw/instance.hpp"

namespace msw {

/// Every multiset of bin types whose joint footprint fits `space`, up to
/// floor(space / smallest area) bins. Returns an empty list (and appends a
/// warning) when not even the smallest bin fits.
std::vector<BinCombination> enumerate_feasible(const std::vector<BinType>& bin_types, Fixed space,
                                               std::vector<std::string>* warnings = nullptr);

/// Pareto filter over (joint_cost min, joint_capacity max), divide-and-
/// conquer front after sorting by descending capacity. The result is
/// sorted by ascending joint cost and is strictly increasing in both cost
/// and capacity.
std::vector<BinCombination> pareto_front(std::vector<BinCombination> combinations);

/// enumerate_feasible + pareto_front with stable ids 0.. by ascending cost.
/// Throws ValidationError when no combination fits (the GAP cannot host
/// any bin).
std::vector<BinCombination> preprocess(const std::vector<BinType>& bin_types, Fixed space);

/// Per-GAP fronts for a whole instance (shared catalog, per-GAP space).
std::vector<std::vector<BinCombination>> combos_per_gap(const Instance& inst);

}  // namespace msw

#endif
