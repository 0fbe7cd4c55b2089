#ifndef MSW_ORACLE_HPP
#define MSW_ORACLE_HPP

#include "msw/instance.hpp"
#include "msw/mip.hpp"
#include "msw/report.hpp"

namespace msw::oracle {

struct Limits {
    int max_gaps = 4;
    int max_days = 2;
};

/// Ground-truth optimum by exhaustive search: every visit assignment,
/// cheapest covering bin combination per GAP, and every split of each
/// day's required GAPs into at most |L| ordered tours. Refuses instances
/// beyond the limits. Ties resolve to the lexicographically smallest
/// assignment, then first tour layout found.
SolveReport brute_force(const Instance& inst, const mip::CombosPerGap& combos, const Limits& limits = {});

}  // namespace msw::oracle

#endif
