#include "msw/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "textio.hpp"

namespace msw {

bool Instance::operator==(const Instance& o) const {
    // warnings are advisory and regenerated on load; they do not take part
    // in round-trip equality.
    return name == o.name && gaps == o.gaps && travel == o.travel &&
           horizon_days == o.horizon_days && vehicle_count == o.vehicle_count &&
           vehicle_capacity == o.vehicle_capacity && time_limit == o.time_limit &&
           alpha == o.alpha && visit_combinations == o.visit_combinations &&
           bin_types == o.bin_types;
}

int derive_beta(const std::vector<int>& days, int horizon) {
    if (days.empty()) throw ValidationError("visit combination has no days");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    std::vector<int> sorted = days;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int d : sorted)
        if (d < 0 || d >= horizon)
            throw ValidationError("visit day " + std::to_string(d) + " outside horizon of " +
                                  std::to_string(horizon) + " days");
    if (sorted.size() == 1) return horizon;
    int beta = 0;
    for (std::size_t k = 1; k < sorted.size(); ++k) beta = std::max(beta, sorted[k] - sorted[k - 1]);
    // wrap from the last visit to the first visit of the next horizon repetition
    beta = std::max(beta, sorted.front() + horizon - sorted.back());
    return beta;
}

FleetParams synthesize_fleet_params(const std::vector<Fixed>& daily_generation,
                                    const std::vector<std::vector<double>>& travel) {
    if (daily_generation.empty()) throw ValidationError("fleet synthesis needs at least one GAP");
    FleetParams p;
    std::int64_t total_raw = 0;
    for (Fixed b : daily_generation) total_raw += b.raw();
    // Q = ceil(sum b_i / 2), in whole cubic metres
    std::int64_t half = total_raw;  // total/2 in units of raw/2
    std::int64_t q_units = (half + 2 * Fixed::scale - 1) / (2 * Fixed::scale);
    p.capacity = Fixed::from_int(q_units);
    int nodes = static_cast<int>(daily_generation.size()) + 1;
    p.vehicle_count = (nodes + 1) / 2;
    double total_time = 0;
    for (std::size_t i = 0; i < travel.size(); ++i)
        for (std::size_t j = 0; j < travel[i].size(); ++j)
            if (i != j) total_time += travel[i][j];
    p.time_limit = std::ceil(total_time / 2.0);
    if (p.time_limit <= 0) p.warnings.push_back("time limit synthesized to 0 (all-zero travel matrix)");
    return p;
}

void validate_instance(Instance& inst) {
    if (inst.gaps.empty()) throw ValidationError("instance has no GAPs");
    if (inst.bin_types.empty()) throw ValidationError("instance has no bin types");
    if (inst.horizon_days < 1) throw ValidationError("horizon must be >= 1");
    if (inst.vehicle_count < 1) throw ValidationError("vehicle count must be >= 1");
    if (inst.vehicle_capacity <= Fixed{}) throw ValidationError("vehicle capacity must be > 0");
    if (inst.time_limit <= 0) throw ValidationError("time limit must be > 0");
    if (inst.alpha < Fixed{}) throw ValidationError("alpha must be >= 0");
    if (inst.visit_combinations.empty()) throw ValidationError("instance has no visit combinations");

    Fixed min_area = inst.bin_types.front().area;
    for (const BinType& b : inst.bin_types) {
        if (b.capacity <= Fixed{}) throw ValidationError("bin " + std::to_string(b.id) + ": capacity must be > 0");
        if (b.area <= Fixed{}) throw ValidationError("bin " + std::to_string(b.id) + ": area must be > 0");
        if (b.daily_cost <= Fixed{}) throw ValidationError("bin " + std::to_string(b.id) + ": daily_cost must be > 0");
        if (b.purchase_cost < Fixed{})
            throw ValidationError("bin " + std::to_string(b.id) + ": purchase_cost must be >= 0");
        min_area = std::min(min_area, b.area);
    }
    for (std::size_t k = 0; k < inst.bin_types.size(); ++k)
        if (inst.bin_types[k].id != static_cast<int>(k))
            throw ValidationError("bin ids must be 0..P-1 in order");

    for (std::size_t k = 0; k < inst.gaps.size(); ++k) {
        const Gap& g = inst.gaps[k];
        if (g.id != static_cast<int>(k) + 1) throw ValidationError("gap ids must be 1..N in order");
        if (g.daily_generation < Fixed{})
            throw ValidationError("gap " + std::to_string(g.id) + ": daily generation must be >= 0");
        if (g.service_time < 0)
            throw ValidationError("gap " + std::to_string(g.id) + ": service time must be >= 0");
        if (g.available_space < min_area)
            throw ValidationError("gap " + std::to_string(g.id) +
                                  ": available space is below the smallest bin area, no combination fits");
    }

    std::size_t n = inst.gaps.size() + 1;
    if (inst.travel.size() != n) throw ValidationError("travel matrix must be " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.travel[i].size() != n)
            throw ValidationError("travel row " + std::to_string(i) + " must have " + std::to_string(n) +
                                  " entries");
        for (std::size_t j = 0; j < n; ++j) {
            double c = inst.travel[i][j];
            if (!(c >= 0) || !std::isfinite(c)) throw ValidationError("travel must be >= 0 and finite");
            if (i == j && c != 0) throw ValidationError("travel diagonal must be zero");
        }
    }

    for (std::size_t k = 0; k < inst.visit_combinations.size(); ++k) {
        VisitCombination& r = inst.visit_combinations[k];
        if (r.id != static_cast<int>(k)) throw ValidationError("visit combination ids must be 0..R-1 in order");
        int beta = derive_beta(r.days, inst.horizon_days);  // also bounds-checks the days
        if (r.beta != 0 && r.beta != beta)
            throw ValidationError("visit combination " + std::to_string(r.id) + ": declared beta " +
                                  std::to_string(r.beta) + " but derived " + std::to_string(beta));
        r.beta = beta;
        std::sort(r.days.begin(), r.days.end());
    }

    // Soft check: fleet volume over the horizon against demand at the most
    // frequent visit pattern. Not a hard error; tight instances may still
    // be feasible day by day.
    int beta_min = inst.visit_combinations.front().beta;
    for (const VisitCombination& r : inst.visit_combinations) beta_min = std::min(beta_min, r.beta);
    std::int64_t demand_raw = 0;
    for (const Gap& g : inst.gaps) demand_raw += g.daily_generation.raw() * beta_min;
    std::int64_t fleet_raw =
        inst.vehicle_capacity.raw() * static_cast<std::int64_t>(inst.vehicle_count) * inst.horizon_days;
    if (demand_raw > fleet_raw)
        inst.warnings.push_back("capacity sanity: demand at the most frequent visit pattern (" +
                                Fixed::from_raw(demand_raw).str() + " m3) exceeds fleet capacity over the horizon (" +
                                Fixed::from_raw(fleet_raw).str() + " m3)");
}

namespace {

using textio::Line;
using textio::Reader;

struct MetaFields {
    std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
};

}  // namespace

Instance load_instance(std::istream& in, const std::string& display_name) {
    Reader reader(in, display_name);
    Instance inst;
    MetaFields meta;
    std::vector<std::vector<double>> travel;
    std::string section;
    int visit_id = 0;

    for (auto line = reader.next(); line; line = reader.next()) {
        const std::string& text = line->text;
        if (text.front() == '[') {
            if (text.back() != ']') reader.fail(line->number, "malformed section header");
            section = text.substr(1, text.size() - 2);
            if (section != "meta" && section != "bins" && section != "gaps" && section != "travel" &&
                section != "visits")
                reader.fail(line->number, "unknown section [" + section + "]");
            continue;
        }
        if (section == "meta") {
            auto eq = text.find('=');
            if (eq == std::string::npos) reader.fail(line->number, "meta entries must be 'key = value'");
            std::string key(textio::trim(std::string_view(text).substr(0, eq)));
            std::string value(textio::trim(std::string_view(text).substr(eq + 1)));
            if (value.empty()) reader.fail(line->number, "meta key '" + key + "' has no value");
            meta.kv[key] = {value, line->number};
        } else if (section == "bins") {
            auto f = textio::split_fields(text);
            if (f.size() != 5)
                reader.fail(line->number, "bins: expected 'id purchase_cost daily_cost capacity area'");
            BinType b;
            b.id = static_cast<int>(textio::parse_int(reader, line->number, f[0], "bin id"));
            b.purchase_cost = textio::parse_fixed(reader, line->number, f[1], "purchase_cost");
            b.daily_cost = textio::parse_fixed(reader, line->number, f[2], "daily_cost");
            b.capacity = textio::parse_fixed(reader, line->number, f[3], "capacity");
            b.area = textio::parse_fixed(reader, line->number, f[4], "area");
            inst.bin_types.push_back(b);
        } else if (section == "gaps") {
            auto f = textio::split_fields(text);
            if (f.size() != 4) reader.fail(line->number, "gaps: expected 'id generation service_time space'");
            Gap g;
            g.id = static_cast<int>(textio::parse_int(reader, line->number, f[0], "gap id"));
            g.daily_generation = textio::parse_fixed(reader, line->number, f[1], "generation");
            g.service_time = textio::parse_double(reader, line->number, f[2], "service_time");
            g.available_space = textio::parse_fixed(reader, line->number, f[3], "space");
            inst.gaps.push_back(g);
        } else if (section == "travel") {
            auto f = textio::split_fields(text);
            std::vector<double> row;
            row.reserve(f.size());
            for (const auto& tok : f) row.push_back(textio::parse_double(reader, line->number, tok, "travel"));
            travel.push_back(std::move(row));
        } else if (section == "visits") {
            auto f = textio::split_fields(text);
            VisitCombination r;
            r.id = visit_id++;
            for (const auto& tok : f) {
                if (tok.rfind("beta=", 0) == 0) {
                    r.beta = static_cast<int>(
                        textio::parse_int(reader, line->number, std::string_view(tok).substr(5), "beta"));
                    continue;
                }
                long day = textio::parse_int(reader, line->number, tok, "visit day");
                r.days.push_back(static_cast<int>(day) - 1);  // file is 1-based
            }
            if (r.days.empty()) reader.fail(line->number, "visit combination has no days");
            inst.visit_combinations.push_back(std::move(r));
        } else {
            reader.fail(line->number, "content before any [section] header");
        }
    }

    auto need = [&](const char* key) -> std::pair<std::string, int> {
        auto it = meta.kv.find(key);
        if (it == meta.kv.end()) throw ParseError(display_name + ": missing meta key '" + std::string(key) + "'");
        return it->second;
    };
    Reader meta_reader(in, display_name);  // only used for error formatting
    {
        auto [v, ln] = need("horizon");
        inst.horizon_days = static_cast<int>(textio::parse_int(meta_reader, ln, v, "horizon"));
    }
    {
        auto [v, ln] = need("vehicles");
        inst.vehicle_count = static_cast<int>(textio::parse_int(meta_reader, ln, v, "vehicles"));
    }
    {
        auto [v, ln] = need("capacity");
        inst.vehicle_capacity = textio::parse_fixed(meta_reader, ln, v, "capacity");
    }
    {
        auto [v, ln] = need("time_limit");
        inst.time_limit = textio::parse_double(meta_reader, ln, v, "time_limit");
    }
    {
        auto [v, ln] = need("alpha");
        inst.alpha = textio::parse_fixed(meta_reader, ln, v, "alpha");
    }
    if (auto it = meta.kv.find("name"); it != meta.kv.end()) inst.name = it->second.first;

    inst.travel = std::move(travel);
    try {
        validate_instance(inst);
    } catch (const ValidationError& e) {
        throw ValidationError(display_name + ": " + e.what());
    }
    return inst;
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return load_instance(in, path);
}

void save_instance(const Instance& inst, std::ostream& out) {
    out << "[meta]\n";
    if (!inst.name.empty()) out << "name = " << inst.name << "\n";
    out << "horizon = " << inst.horizon_days << "\n";
    out << "alpha = " << inst.alpha.str() << "\n";
    out << "vehicles = " << inst.vehicle_count << "\n";
    out << "capacity = " << inst.vehicle_capacity.str() << "\n";
    out << "time_limit = " << textio::fmt_double(inst.time_limit) << "\n";
    out << "\n[bins]\n";
    out << "# id purchase_cost daily_cost capacity area\n";
    for (const BinType& b : inst.bin_types)
        out << b.id << " " << b.purchase_cost.str() << " " << b.daily_cost.str() << " " << b.capacity.str()
            << " " << b.area.str() << "\n";
    out << "\n[gaps]\n";
    out << "# id generation service_time space\n";
    for (const Gap& g : inst.gaps)
        out << g.id << " " << g.daily_generation.str() << " " << textio::fmt_double(g.service_time) << " "
            << g.available_space.str() << "\n";
    out << "\n[travel]\n";
    for (const auto& row : inst.travel) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << textio::fmt_double(row[j]);
        out << "\n";
    }
    out << "\n[visits]\n";
    out << "# 1-based day lists\n";
    for (const VisitCombination& r : inst.visit_combinations) {
        for (std::size_t k = 0; k < r.days.size(); ++k) out << (k ? " " : "") << (r.days[k] + 1);
        out << " beta=" << r.beta << "\n";
    }
}

std::string instance_to_string(const Instance& inst) {
    std::ostringstream os;
    save_instance(inst, os);
    return os.str();
}

}  // namespace msw
