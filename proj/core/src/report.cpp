#include "msw/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "textio.hpp"

namespace msw {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return textio::fmt_double(v);
}

double parse_value(const textio::Reader& r, int line, std::string_view tok, std::string_view field) {
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    return textio::parse_double(r, line, tok, field);
}

}  // namespace

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::dnf: return "dnf";
    }
    return "?";
}

void write_report(const SolveReport& rep, std::ostream& out) {
    out << "[solution]\n";
    out << "instance = " << rep.instance << "\n";
    out << "method = " << rep.method << "\n";
    out << "options = " << (rep.options.empty() ? "-" : rep.options) << "\n";
    out << "status = " << to_string(rep.status) << "\n";
    out << "objective = " << fmt(rep.objective) << "\n";
    out << "routing_cost = " << fmt(rep.routing_cost) << "\n";
    out << "bin_cost = " << fmt(rep.bin_cost) << "\n";
    out << "best_bound = " << fmt(rep.best_bound) << "\n";
    if (!rep.note.empty()) out << "note = " << rep.note << "\n";

    out << "\n[routes]\n# vehicle day arcs (day is 1-based)\n";
    for (const Route& r : rep.routes) {
        out << r.vehicle << " " << (r.day + 1);
        for (auto [a, b] : r.arcs) out << " " << a << ">" << b;
        out << "\n";
    }
    out << "\n[bins]\n# gap combination_id\n";
    for (std::size_t i = 0; i < rep.bins.size(); ++i) out << (i + 1) << " " << rep.bins[i] << "\n";
    out << "\n[visits]\n# gap visit_combination_id\n";
    for (std::size_t i = 0; i < rep.visits.size(); ++i) out << (i + 1) << " " << rep.visits[i] << "\n";

    out << "\n[pool]\n# lb heuristic processed exact node\n";
    for (const PoolEntryRow& p : rep.pool)
        out << fmt(p.lb) << " " << fmt(p.heuristic) << " " << (p.processed ? 1 : 0) << " " << fmt(p.exact)
            << " " << p.node << "\n";

    out << "\n[iterations]\n# node routing sp_lp sp_heur sp_int cuts\n";
    for (const IterationRow& it : rep.iterations) {
        out << it.node << " " << fmt(it.routing_part) << " " << fmt(it.sp_lp) << " " << fmt(it.sp_heur) << " ";
        out << (it.has_sp_int ? fmt(it.sp_int) : "-");
        out << " " << (it.cuts.empty() ? "-" : it.cuts) << "\n";
    }

    out << "\n[trace]\n# iteration lb ub\n";
    for (const BoundsRow& t : rep.trace) out << t.iteration << " " << fmt(t.lb) << " " << fmt(t.ub) << "\n";

    out << "\n[stats]\n";
    out << "nodes = " << rep.stats.nodes << "\n";
    out << "lp_solves = " << rep.stats.lp_solves << "\n";
    out << "master_iterations = " << rep.stats.master_iterations << "\n";
    out << "postproc_iterations = " << rep.stats.postproc_iterations << "\n";
    out << "postproc_skipped = " << rep.stats.postproc_skipped << "\n";
    out << "open_solutions = " << rep.stats.open_solutions << "\n";
    out << "cuts_optimality = " << rep.stats.cuts_optimality << "\n";
    out << "cuts_feasibility = " << rep.stats.cuts_feasibility << "\n";
    out << "cuts_lshaped = " << rep.stats.cuts_lshaped << "\n";
    out << "cuts_partial = " << rep.stats.cuts_partial << "\n";
}

std::string report_to_string(const SolveReport& rep) {
    std::ostringstream os;
    write_report(rep, os);
    return os.str();
}

SolveReport load_report(std::istream& in, const std::string& display_name) {
    textio::Reader reader(in, display_name);
    SolveReport rep;
    std::string section;
    for (auto line = reader.next(); line; line = reader.next()) {
        const std::string& text = line->text;
        if (text.front() == '[') {
            if (text.back() != ']') reader.fail(line->number, "malformed section header");
            section = text.substr(1, text.size() - 2);
            continue;
        }
        if (section == "solution" || section == "stats") {
            auto eq = text.find('=');
            if (eq == std::string::npos) reader.fail(line->number, "expected 'key = value'");
            std::string key(textio::trim(std::string_view(text).substr(0, eq)));
            std::string value(textio::trim(std::string_view(text).substr(eq + 1)));
            if (section == "solution") {
                if (key == "instance")
                    rep.instance = value;
                else if (key == "method")
                    rep.method = value;
                else if (key == "options")
                    rep.options = value == "-" ? "" : value;
                else if (key == "status") {
                    if (value == "optimal")
                        rep.status = SolveStatus::optimal;
                    else if (value == "infeasible")
                        rep.status = SolveStatus::infeasible;
                    else if (value == "dnf")
                        rep.status = SolveStatus::dnf;
                    else
                        reader.fail(line->number, "unknown status '" + value + "'");
                } else if (key == "objective")
                    rep.objective = parse_value(reader, line->number, value, key);
                else if (key == "routing_cost")
                    rep.routing_cost = parse_value(reader, line->number, value, key);
                else if (key == "bin_cost")
                    rep.bin_cost = parse_value(reader, line->number, value, key);
                else if (key == "best_bound")
                    rep.best_bound = parse_value(reader, line->number, value, key);
                else if (key == "note")
                    rep.note = value;
                else
                    reader.fail(line->number, "unknown solution key '" + key + "'");
            } else {
                long v = textio::parse_int(reader, line->number, value, key);
                if (key == "nodes")
                    rep.stats.nodes = v;
                else if (key == "lp_solves")
                    rep.stats.lp_solves = v;
                else if (key == "master_iterations")
                    rep.stats.master_iterations = v;
                else if (key == "postproc_iterations")
                    rep.stats.postproc_iterations = v;
                else if (key == "postproc_skipped")
                    rep.stats.postproc_skipped = v;
                else if (key == "open_solutions")
                    rep.stats.open_solutions = v;
                else if (key == "cuts_optimality")
                    rep.stats.cuts_optimality = v;
                else if (key == "cuts_feasibility")
                    rep.stats.cuts_feasibility = v;
                else if (key == "cuts_lshaped")
                    rep.stats.cuts_lshaped = v;
                else if (key == "cuts_partial")
                    rep.stats.cuts_partial = v;
                else
                    reader.fail(line->number, "unknown stats key '" + key + "'");
            }
        } else if (section == "routes") {
            auto f = textio::split_fields(text);
            if (f.size() < 2) reader.fail(line->number, "routes: expected 'vehicle day arcs...'");
            Route r;
            r.vehicle = static_cast<int>(textio::parse_int(reader, line->number, f[0], "vehicle"));
            r.day = static_cast<int>(textio::parse_int(reader, line->number, f[1], "day")) - 1;
            for (std::size_t k = 2; k < f.size(); ++k) {
                auto gt = f[k].find('>');
                if (gt == std::string::npos) reader.fail(line->number, "arc must be 'from>to'");
                int a = static_cast<int>(
                    textio::parse_int(reader, line->number, std::string_view(f[k]).substr(0, gt), "arc"));
                int b = static_cast<int>(
                    textio::parse_int(reader, line->number, std::string_view(f[k]).substr(gt + 1), "arc"));
                r.arcs.emplace_back(a, b);
            }
            rep.routes.push_back(std::move(r));
        } else if (section == "bins" || section == "visits") {
            auto f = textio::split_fields(text);
            if (f.size() != 2) reader.fail(line->number, section + ": expected 'gap id'");
            long gap = textio::parse_int(reader, line->number, f[0], "gap");
            long id = textio::parse_int(reader, line->number, f[1], "id");
            auto& vec = section == "bins" ? rep.bins : rep.visits;
            if (gap != static_cast<long>(vec.size()) + 1)
                reader.fail(line->number, section + ": gaps must appear in order 1..N");
            vec.push_back(static_cast<int>(id));
        } else if (section == "pool") {
            auto f = textio::split_fields(text);
            if (f.size() != 5) reader.fail(line->number, "pool: expected 'lb heuristic processed exact node'");
            PoolEntryRow p;
            p.lb = parse_value(reader, line->number, f[0], "lb");
            p.heuristic = parse_value(reader, line->number, f[1], "heuristic");
            p.processed = textio::parse_int(reader, line->number, f[2], "processed") != 0;
            p.exact = parse_value(reader, line->number, f[3], "exact");
            p.node = textio::parse_int(reader, line->number, f[4], "node");
            rep.pool.push_back(p);
        } else if (section == "iterations") {
            auto f = textio::split_fields(text);
            if (f.size() != 6)
                reader.fail(line->number, "iterations: expected 'node routing sp_lp sp_heur sp_int cuts'");
            IterationRow it;
            it.node = textio::parse_int(reader, line->number, f[0], "node");
            it.routing_part = parse_value(reader, line->number, f[1], "routing");
            it.sp_lp = parse_value(reader, line->number, f[2], "sp_lp");
            it.sp_heur = parse_value(reader, line->number, f[3], "sp_heur");
            if (f[4] != "-") {
                it.has_sp_int = true;
                it.sp_int = parse_value(reader, line->number, f[4], "sp_int");
            }
            it.cuts = f[5] == "-" ? "" : f[5];
            rep.iterations.push_back(std::move(it));
        } else if (section == "trace") {
            auto f = textio::split_fields(text);
            if (f.size() != 3) reader.fail(line->number, "trace: expected 'iteration lb ub'");
            BoundsRow t;
            t.iteration = textio::parse_int(reader, line->number, f[0], "iteration");
            t.lb = parse_value(reader, line->number, f[1], "lb");
            t.ub = parse_value(reader, line->number, f[2], "ub");
            rep.trace.push_back(t);
        } else {
            reader.fail(line->number, "content before any [section] header");
        }
    }
    return rep;
}

SolveReport load_report_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return load_report(in, path);
}

}  // namespace msw
