#ifndef MSW_INSTANCE_HPP
#define MSW_INSTANCE_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "msw/fixed.hpp"

namespace msw {

/// Thrown on malformed instance/solution files; the message carries the
/// line number and failing field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a structurally valid file violates a model invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One commercial bin model: purchase price, amortized daily cost, storage
/// capacity (m3) and footprint (m2).
struct BinType {
    int id = 0;
    Fixed purchase_cost;
    Fixed daily_cost;
    Fixed capacity;
    Fixed area;

    bool operator==(const BinType&) const = default;
};

/// A garbage accumulation point: candidate site for community bins.
struct Gap {
    int id = 0;               // 1-based; 0 is the depot
    Fixed daily_generation;   // m3 of waste per day
    double service_time = 0;  // minutes to empty the site
    Fixed available_space;    // m2 usable for bins

    bool operator==(const Gap&) const = default;
};

/// A subset of horizon days on which a site is emptied. `beta` is the
/// maximum number of days between two consecutive visits, computed
/// cyclically over the repeating horizon.
struct VisitCombination {
    int id = 0;
    std::vector<int> days;  // 0-based, sorted, nonempty
    int beta = 0;

    bool visits_on(int day) const {
        for (int d : days)
            if (d == day) return true;
        return false;
    }
    bool operator==(const VisitCombination&) const = default;
};

/// A multiset of bin types that fits a site, with its joint figures.
struct BinCombination {
    int id = 0;
    std::vector<int> counts;  // per bin type
    Fixed joint_cost;
    Fixed joint_capacity;
    Fixed joint_area;

    bool operator==(const BinCombination&) const = default;
};

struct Instance {
    std::string name;
    std::vector<Gap> gaps;
    std::vector<std::vector<double>> travel;  // minutes, (n+1)x(n+1), row-major, node 0 = depot
    int horizon_days = 0;
    int vehicle_count = 0;
    Fixed vehicle_capacity;  // m3
    double time_limit = 0;   // minutes per vehicle per day
    Fixed alpha;             // currency per minute of driving + service
    std::vector<VisitCombination> visit_combinations;
    std::vector<BinType> bin_types;
    std::vector<std::string> warnings;  // non-fatal findings from validation

    int node_count() const { return static_cast<int>(gaps.size()) + 1; }
    int gap_count() const { return static_cast<int>(gaps.size()); }
    /// Service time of a node; the depot (0) has none.
    double service(int node) const { return node == 0 ? 0.0 : gaps[node - 1].service_time; }
    /// Objective/duration weight of arc (i, j): travel plus tail service.
    double arc_time(int i, int j) const { return travel[i][j] + service(i); }

    bool operator==(const Instance& o) const;
};

/// Maximum cyclic gap (in days) between consecutive visit days of `days`
/// within a repeating horizon of `horizon` days. Day indices are 0-based.
int derive_beta(const std::vector<int>& days, int horizon);

struct FleetParams {
    Fixed capacity;  // Q
    int vehicle_count = 0;
    double time_limit = 0;  // TL, minutes
    std::vector<std::string> warnings;
};

/// Downsized fleet parameters for synthesized instances:
/// Q = ceil(sum b_i / 2), |L| = ceil(|I0| / 2), TL = ceil(sum c_ij / 2).
FleetParams synthesize_fleet_params(const std::vector<Fixed>& daily_generation,
                                    const std::vector<std::vector<double>>& travel);

Instance load_instance(std::istream& in, const std::string& display_name = "<stream>");
Instance load_instance_file(const std::string& path);
void save_instance(const Instance& inst, std::ostream& out);
std::string instance_to_string(const Instance& inst);

/// Re-runs the full invariant suite on an already built instance.
/// Throws ValidationError on hard violations and appends soft findings
/// (capacity sanity, zero time limit) to inst.warnings.
void validate_instance(Instance& inst);

}  // namespace msw

#endif
