#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "msw/benders.hpp"
#include "msw/instance.hpp"
#include "msw/mip.hpp"
#include "msw/oracle.hpp"
#include "msw/preproc.hpp"
#include "msw/report.hpp"
#include "msw/synth.hpp"

namespace msw::cli {

namespace {

namespace fs = std::filesystem;

struct MethodSpec {
    std::string label;  // as given, e.g. "benders+vis+lshaped"
    bool benders = false;
    bool vis = false;
    bool partial = false;
    bool lshaped = false;
};

MethodSpec parse_method(const std::string& text) {
    MethodSpec m;
    m.label = text;
    std::stringstream ss(text);
    std::string tok;
    bool first = true;
    while (std::getline(ss, tok, '+')) {
        if (first) {
            if (tok == "mip")
                m.benders = false;
            else if (tok == "benders")
                m.benders = true;
            else
                throw CLI::ValidationError("method", "unknown method '" + tok + "' (mip|benders)");
            first = false;
        } else if (tok == "vis") {
            m.vis = true;
        } else if (tok == "lshaped" && m.benders) {
            m.lshaped = true;
        } else if (tok == "partial" && m.benders) {
            m.partial = true;
        } else {
            throw CLI::ValidationError("method", "unknown option '+" + tok + "' for this method");
        }
    }
    if (first) throw CLI::ValidationError("method", "empty method");
    return m;
}

double default_time_limit() {
    if (const char* env = std::getenv("MSW_TIME_LIMIT")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 600.0;
}

std::vector<BinType> load_bin_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::vector<BinType> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::stringstream ss(raw);
        std::vector<std::string> f;
        std::string tok;
        while (ss >> tok) f.push_back(tok);
        if (f.empty() || f[0] == "[bins]") continue;
        if (f.size() != 5)
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 'id purchase_cost daily_cost capacity area'");
        BinType b;
        b.id = std::stoi(f[0]);
        b.purchase_cost = Fixed::parse(f[1]);
        b.daily_cost = Fixed::parse(f[2]);
        b.capacity = Fixed::parse(f[3]);
        b.area = Fixed::parse(f[4]);
        out.push_back(b);
    }
    return out;
}

int status_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return 0;
        case SolveStatus::infeasible: return 1;
        case SolveStatus::dnf: return 2;
    }
    return 3;
}

void emit_report(const SolveReport& rep, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        write_report(rep, out);
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    write_report(rep, f);
}

SolveReport run_method(const Instance& inst, const mip::CombosPerGap& combos, const MethodSpec& m,
                       long node_limit, double time_limit) {
    if (!m.benders) {
        mip::FullSolveOptions opt;
        opt.vis = m.vis;
        opt.node_limit = node_limit;
        opt.time_limit_s = time_limit;
        return mip::solve_full(inst, combos, opt);
    }
    benders::UbbcOptions opt;
    opt.vis = m.vis;
    opt.partial = m.partial;
    opt.lshaped = m.lshaped;
    opt.node_limit = node_limit;
    opt.time_limit_s = time_limit;
    return benders::ubbc_solve(inst, combos, opt).report;
}

std::string csv_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("mswsolve");
    for (const auto& a : args) argv.push_back(a.c_str());

    CLI::App app{"Bin allocation and collection routing solver suite"};
    app.require_subcommand(1);

    // --- preprocess --------------------------------------------------------
    auto* pre = app.add_subcommand("preprocess", "Enumerate the efficient bin combinations for a space budget");
    std::string pre_bins, pre_out;
    std::string pre_space;
    pre->add_option("--bins", pre_bins, "bin catalog file (id purchase daily capacity area per line)")
        ->required();
    pre->add_option("--space", pre_space, "available space in m2")->required();
    pre->add_option("--out", pre_out, "write the table to a file instead of stdout");

    // --- solve --------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    std::string s_instance, s_method = "benders", s_out;
    bool s_vis = false, s_lshaped = false, s_partial = false;
    long s_nodes = 1'000'000;
    double s_time = default_time_limit();
    unsigned long long s_seed = 0;
    solve->add_option("--instance", s_instance, "instance file")->required();
    solve->add_option("--method", s_method, "mip or benders (options may also ride on the name, e.g. benders+vis)");
    solve->add_flag("--vis", s_vis, "add the symmetry-breaking valid inequalities");
    solve->add_flag("--lshaped", s_lshaped, "add integer L-shaped cuts (benders)");
    solve->add_flag("--partial", s_partial, "keep a relaxed allocation copy in the master (benders)");
    solve->add_option("--time-limit", s_time, "seconds before reporting dnf");
    solve->add_option("--node-limit", s_nodes, "node budget before reporting dnf");
    solve->add_option("--seed", s_seed, "accepted for interface symmetry; solves are deterministic");
    solve->add_option("--out", s_out, "write the solution file here (default stdout)");

    // --- oracle --------------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "Exhaustive ground-truth optimum for desk-scale instances");
    std::string o_instance, o_out;
    int o_max_gaps = 4, o_max_days = 2;
    orc->add_option("--instance", o_instance, "instance file")->required();
    orc->add_option("--out", o_out, "write the solution file here (default stdout)");
    orc->add_option("--max-gaps", o_max_gaps, "refusal threshold");
    orc->add_option("--max-days", o_max_days, "refusal threshold");

    // --- check --------------------------------------------------------------
    auto* chk = app.add_subcommand("check", "Re-validate a solution file against its instance");
    std::string c_instance, c_solution;
    chk->add_option("--instance", c_instance, "instance file")->required();
    chk->add_option("--solution", c_solution, "solution file")->required();

    // --- bench --------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Run a method matrix over instances and emit a CSV");
    std::string b_dir, b_methods = "mip,mip+vis,benders,benders+vis", b_csv, b_outdir;
    int b_runs = 5, b_generate = 0, b_gaps = 3, b_days = 2;
    unsigned long long b_seed = 1;
    long b_nodes = 1'000'000;
    double b_time = default_time_limit();
    bench->add_option("--instances", b_dir, "directory of instance files");
    bench->add_option("--generate", b_generate, "generate this many random instances instead");
    bench->add_option("--gaps", b_gaps, "GAP count for generated instances");
    bench->add_option("--days", b_days, "horizon for generated instances");
    bench->add_option("--seed", b_seed, "seed for instance generation");
    bench->add_option("--out-dir", b_outdir, "write generated instances here");
    bench->add_option("--methods", b_methods, "comma list, e.g. mip+vis,benders+vis+lshaped");
    bench->add_option("--runs", b_runs, "repetitions per instance-method pair");
    bench->add_option("--csv", b_csv, "write rows here (default stdout)");
    bench->add_option("--time-limit", b_time, "seconds per solve before dnf");
    bench->add_option("--node-limit", b_nodes, "node budget per solve");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (*pre) {
            std::vector<BinType> catalog = load_bin_catalog(pre_bins);
            std::vector<BinCombination> front = preprocess(catalog, Fixed::parse(pre_space));
            std::ostringstream table;
            table << "# id daily_cost capacity area\n";
            for (const BinCombination& u : front)
                table << u.id << " " << u.joint_cost.str() << " " << u.joint_capacity.str() << " "
                      << u.joint_area.str() << "\n";
            if (pre_out.empty()) {
                out << table.str();
            } else {
                std::ofstream f(pre_out);
                if (!f) throw std::runtime_error("cannot write " + pre_out);
                f << table.str();
            }
            return 0;
        }

        if (*solve) {
            MethodSpec m = parse_method(s_method);
            m.vis |= s_vis;
            m.lshaped |= s_lshaped;
            m.partial |= s_partial;
            if (!m.benders && (m.lshaped || m.partial))
                throw CLI::ValidationError("method", "--lshaped/--partial apply to benders only");
            Instance inst = load_instance_file(s_instance);
            for (const std::string& w : inst.warnings) err << "warning: " << w << "\n";
            mip::CombosPerGap combos = combos_per_gap(inst);
            SolveReport rep = run_method(inst, combos, m, s_nodes, s_time);
            emit_report(rep, s_out, out);
            return status_code(rep.status);
        }

        if (*orc) {
            Instance inst = load_instance_file(o_instance);
            for (const std::string& w : inst.warnings) err << "warning: " << w << "\n";
            mip::CombosPerGap combos = combos_per_gap(inst);
            oracle::Limits lim{o_max_gaps, o_max_days};
            SolveReport rep = oracle::brute_force(inst, combos, lim);
            emit_report(rep, o_out, out);
            return status_code(rep.status);
        }

        if (*chk) {
            Instance inst = load_instance_file(c_instance);
            mip::CombosPerGap combos = combos_per_gap(inst);
            SolveReport rep = load_report_file(c_solution);
            if (!rep.instance.empty() && !inst.name.empty() && rep.instance != inst.name)
                err << "warning: solution was produced for '" << rep.instance << "', instance is '"
                    << inst.name << "'\n";
            std::vector<std::string> bad = mip::check_report(inst, combos, rep);
            for (const std::string& b : bad) out << "violation: " << b << "\n";
            if (bad.empty()) {
                out << "ok\n";
                return 0;
            }
            return 1;
        }

        if (*bench) {
            std::vector<std::pair<std::string, Instance>> instances;
            if (b_generate > 0) {
                synth::GenParams p;
                p.gaps = b_gaps;
                p.horizon_days = b_days;
                for (int k = 0; k < b_generate; ++k) {
                    Instance inst = synth::generate_instance(p, b_seed + static_cast<unsigned long long>(k));
                    if (!b_outdir.empty()) {
                        fs::create_directories(b_outdir);
                        std::string path = (fs::path(b_outdir) / (std::string("gen_") + std::to_string(k) + ".inst")).string();
                        std::ofstream f(path);
                        save_instance(inst, f);
                    }
                    instances.emplace_back(inst.name, std::move(inst));
                }
            } else if (!b_dir.empty()) {
                std::vector<fs::path> paths;
                for (const auto& entry : fs::directory_iterator(b_dir))
                    if (entry.is_regular_file()) paths.push_back(entry.path());
                std::sort(paths.begin(), paths.end());
                for (const auto& p : paths) {
                    Instance inst = load_instance_file(p.string());
                    std::string name = inst.name.empty() ? p.filename().string() : inst.name;
                    instances.emplace_back(name, std::move(inst));
                }
            } else {
                throw CLI::ValidationError("bench", "need --instances DIR or --generate N");
            }

            std::vector<MethodSpec> methods;
            {
                std::stringstream ss(b_methods);
                std::string tok;
                while (std::getline(ss, tok, ',')) methods.push_back(parse_method(tok));
            }

            std::ostream* csv = &out;
            std::ofstream csv_file;
            if (!b_csv.empty()) {
                csv_file.open(b_csv);
                if (!csv_file) throw std::runtime_error("cannot write " + b_csv);
                csv = &csv_file;
            }
            *csv << "instance,method,run,status,objective,nodes,master_iterations,postproc_iterations,"
                    "cuts_optimality,cuts_feasibility,cuts_lshaped,cuts_partial,wall_seconds\n";

            std::map<std::pair<std::string, std::string>, double> min_wall;
            for (const auto& [name, inst] : instances) {
                mip::CombosPerGap combos = combos_per_gap(inst);
                for (const MethodSpec& m : methods) {
                    for (int run_idx = 1; run_idx <= b_runs; ++run_idx) {
                        auto t0 = std::chrono::steady_clock::now();
                        SolveReport rep = run_method(inst, combos, m, b_nodes, b_time);
                        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                        auto key = std::make_pair(name, m.label);
                        auto it = min_wall.find(key);
                        if (it == min_wall.end() || wall < it->second) min_wall[key] = wall;
                        *csv << name << "," << m.label << "," << run_idx << "," << to_string(rep.status) << ",";
                        if (rep.status == SolveStatus::dnf)
                            *csv << "";  // never a sentinel objective
                        else if (rep.status == SolveStatus::optimal)
                            *csv << csv_double(rep.objective);
                        *csv << "," << rep.stats.nodes << "," << rep.stats.master_iterations << ","
                             << rep.stats.postproc_iterations << "," << rep.stats.cuts_optimality << ","
                             << rep.stats.cuts_feasibility << "," << rep.stats.cuts_lshaped << ","
                             << rep.stats.cuts_partial << "," << csv_double(wall) << "\n";
                    }
                }
            }
            out << "# minimum wall seconds per instance-method pair\n";
            for (const auto& [key, wall] : min_wall)
                out << key.first << " " << key.second << " " << csv_double(wall) << "\n";
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace msw::cli
