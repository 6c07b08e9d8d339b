// isolab: graph equivalence engines, relaxation builders and solvers, and the
// hierarchy cross-validation report, over the graph/system file formats.

#include "isolab/canonical.hpp"
#include "isolab/cfi.hpp"
#include "isolab/iso_oracle.hpp"
#include "isolab/pebble_game.hpp"
#include "isolab/refine.hpp"
#include "isolab/sa_build.hpp"
#include "isolab/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace isolab;

namespace {

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_graph(text);
}

EqSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open system file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_system(text);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

int verdict_exit(bool equivalent, int rounds = -1) {
    std::cout << "RESULT " << (equivalent ? "equivalent" : "distinguished");
    if (rounds >= 0) std::cout << " round=" << rounds;
    std::cout << "\n";
    return equivalent ? 0 : 1;
}

void print_point(const RatAssignment& x) {
    std::vector<const PartialMap*> keys;
    for (auto& [p, v] : x.values) keys.push_back(&p);
    std::sort(keys.begin(), keys.end(),
              [](const PartialMap* a, const PartialMap* b) { return *a < *b; });
    for (auto* p : keys) {
        const Rat& v = x.values.at(*p);
        std::cout << "x " << p->key() << " " << v.get_num() << "/" << v.get_den() << "\n";
    }
}

struct Cell {
    bool computed = false;
    bool value = false;
    std::string note;
    std::string show(const char* yes, const char* no) const {
        return computed ? (value ? yes : no) : "(" + note + ")";
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph equivalence hierarchies and their equation systems"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    long long budget = kDefaultEngineBudget;
    app.add_option("--budget", budget, "engine budget (tuples / game positions)");

    std::string fileA, fileB, outFile, system = "iso", jsonFile;
    int k = 2;
    int guard = 10;
    int cfiT = 4;
    bool twistOnly = false;
    int markRegion = 0;
    long long lpGuard = 3000;

    auto addPair = [&](CLI::App* cmd, bool withK) {
        cmd->add_option("A", fileA, "first graph file")->required();
        cmd->add_option("B", fileB, "second graph file")->required();
        if (withK) cmd->add_option("-k", k, "number of pebbles / variables")->required();
    };

    CLI::App* cr = app.add_subcommand("cr", "colour refinement verdict");
    addPair(cr, false);
    CLI::App* wlCmd = app.add_subcommand("wl", "k-WL verdict");
    addPair(wlCmd, true);
    CLI::App* weakwlCmd = app.add_subcommand("weakwl", "weak k-WL verdict");
    addPair(weakwlCmd, true);
    CLI::App* lkCmd = app.add_subcommand("lk", "k-pebble game verdict");
    addPair(lkCmd, true);
    CLI::App* weaklkCmd = app.add_subcommand("weaklk", "weak k-pebble game verdict");
    addPair(weaklkCmd, true);

    CLI::App* buildCmd = app.add_subcommand("build", "build an equation system");
    buildCmd->add_option("--system", system, "iso|sa|sahalf|biso|bisohalf")->required();
    buildCmd->add_option("-k", k, "level parameter");
    addPair(buildCmd, false);
    buildCmd->add_option("-o", outFile, "output system file")->required();

    CLI::App* solveCmd = app.add_subcommand("solve", "exact rational feasibility");
    solveCmd->add_option("F", fileA, "system file")->required();
    CLI::App* bsolveCmd = app.add_subcommand("bsolve", "boolean system feasibility");
    bsolveCmd->add_option("F", fileA, "system file")->required();

    CLI::App* cfiCmd = app.add_subcommand("cfi", "emit a CFI companion pair");
    cfiCmd->add_option("--t", cfiT, "clique size (3..5)")->required();
    cfiCmd->add_flag("--twist-only", twistOnly, "emit only the twisted graph");
    cfiCmd->add_option("--mark", markRegion, "mark the full-subset inner node of a region");
    cfiCmd->add_option("-o", outFile, "output prefix")->required();

    CLI::App* hierCmd = app.add_subcommand("hierarchy", "cross-validation report");
    addPair(hierCmd, true);
    hierCmd->add_option("--json", jsonFile, "write a structured summary to this file");
    hierCmd->add_option("--lp-guard", lpGuard, "variable limit after presolve");

    CLI::App* isoxCmd = app.add_subcommand("isox", "brute-force isomorphism oracle");
    addPair(isoxCmd, false);
    isoxCmd->add_option("--guard", guard, "size guard");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        if (rc == 0) return 0;
        std::cout << "RESULT error\n";
        return 2;
    }

    try {
        if (cr->parsed()) {
            auto res = colour_refinement(load_graph(fileA), load_graph(fileB), budget);
            return verdict_exit(res.verdict.equivalent, res.verdict.rounds);
        }
        if (wlCmd->parsed()) {
            auto res = wl(k, load_graph(fileA), load_graph(fileB), budget);
            return verdict_exit(res.verdict.equivalent, res.verdict.rounds);
        }
        if (weakwlCmd->parsed()) {
            auto res = weak_wl(k, load_graph(fileA), load_graph(fileB), budget);
            return verdict_exit(res.verdict.equivalent, res.verdict.rounds);
        }
        if (lkCmd->parsed()) {
            auto res = lk(k, load_graph(fileA), load_graph(fileB), budget);
            std::cout << "positions " << res.positions << " removed " << res.removed << "\n";
            return verdict_exit(res.equivalent);
        }
        if (weaklkCmd->parsed()) {
            auto res = weak_lk(k, load_graph(fileA), load_graph(fileB), budget);
            std::cout << "positions " << res.positions << " removed " << res.removed << "\n";
            return verdict_exit(res.equivalent);
        }
        if (buildCmd->parsed()) {
            Graph a = load_graph(fileA), b = load_graph(fileB);
            EqSystem sys;
            if (system == "iso") sys = build_iso(a, b);
            else if (system == "sa") sys = build_sa(k, a, b);
            else if (system == "sahalf") sys = build_sa_half(k, a, b);
            else if (system == "biso") sys = build_biso(k, a, b, false);
            else if (system == "bisohalf") sys = build_biso(k, a, b, true);
            else throw Error("unknown system kind: " + system);
            write_file(outFile, export_system(sys));
            std::cout << "vars " << sys.vars.size() << " eqs " << sys.eqs.size() << "\n";
            std::cout << "RESULT built\n";
            return 0;
        }
        if (solveCmd->parsed()) {
            EqSystem sys = load_system(fileA);
            if (sys.boolean_mode) throw Error("solve: boolean system, use bsolve");
            auto res = lp_feasible(sys);
            std::cout << "status " << (res.feasible() ? "feasible" : "infeasible") << "\n";
            if (res.feasible()) print_point(res.point);
            std::cout << "RESULT " << (res.feasible() ? "feasible" : "infeasible") << "\n";
            return res.feasible() ? 0 : 1;
        }
        if (bsolveCmd->parsed()) {
            EqSystem sys = load_system(fileA);
            if (!sys.boolean_mode) throw Error("bsolve: rational system, use solve");
            auto res = bool_solve(sys);
            std::cout << "status " << (res.feasible ? "feasible" : "infeasible") << "\n";
            if (res.feasible) {
                std::vector<const PartialMap*> keys;
                for (auto& [p, v] : res.point.values) keys.push_back(&p);
                std::sort(keys.begin(), keys.end(),
                          [](const PartialMap* a, const PartialMap* b) { return *a < *b; });
                for (auto* p : keys) std::cout << "x " << p->key() << " 1\n";
            }
            std::cout << "RESULT " << (res.feasible ? "feasible" : "infeasible") << "\n";
            return res.feasible ? 0 : 1;
        }
        if (cfiCmd->parsed()) {
            CfiPair pair = cfi_pair(cfiT);
            if (markRegion > 0) pair = mark_inner(pair, markRegion);
            if (!twistOnly) write_file(outFile + "_straight.gr", render_graph(pair.straight));
            write_file(outFile + "_twisted.gr", render_graph(pair.twisted));
            std::cout << "RESULT built\n";
            return 0;
        }
        if (isoxCmd->parsed()) {
            bool iso = brute_force_isomorphic(load_graph(fileA), load_graph(fileB), guard);
            std::cout << "RESULT " << (iso ? "isomorphic" : "non-isomorphic") << "\n";
            return iso ? 0 : 1;
        }
        if (hierCmd->parsed()) {
            Graph a = load_graph(fileA), b = load_graph(fileB);
            nlohmann::json rows = nlohmann::json::array();
            bool allConsistent = true;

            auto engineCell = [&](auto&& fn) {
                Cell c;
                try {
                    c.value = fn();
                    c.computed = true;
                } catch (const BudgetExceeded&) {
                    c.note = "budget";
                }
                return c;
            };
            const long long buildCap = 400'000; // raw variables before presolve
            auto lpCell = [&](int level, bool half) {
                Cell c;
                try {
                    LinearSystem sys = half ? build_sa_half(level, a, b, buildCap)
                                            : build_sa(level, a, b, buildCap);
                    auto pre = presolve_zero(sys, level, a, b);
                    if (static_cast<long long>(pre.reduced.vars.size()) > lpGuard)
                        throw BudgetExceeded("lp guard");
                    c.value = lp_feasible(pre.reduced).feasible();
                    c.computed = true;
                } catch (const BudgetExceeded&) {
                    c.note = "budget";
                }
                return c;
            };
            auto boolCell = [&](int level, bool half) {
                Cell c;
                try {
                    BooleanSystem sys = build_biso(level, a, b, half, buildCap);
                    c.value = bool_solve(sys).feasible;
                    c.computed = true;
                } catch (const BudgetExceeded&) {
                    c.note = "budget";
                }
                return c;
            };

            printf("%-3s %-8s %-14s %-10s %-12s %-10s\n", "k", "engine", "verdict", "system",
                   "status", "consistent");
            auto emit = [&](int kk, const char* engine, const Cell& eng, const char* sysName,
                            const Cell& sysCell) {
                std::string consistent = "n/a";
                if (eng.computed && sysCell.computed) {
                    bool ok = eng.value == sysCell.value;
                    consistent = ok ? "yes" : "VIOLATION";
                    if (!ok) allConsistent = false;
                }
                printf("%-3d %-8s %-14s %-10s %-12s %-10s\n", kk, engine,
                       eng.show("equivalent", "distinguished").c_str(), sysName,
                       sysCell.show("feasible", "infeasible").c_str(), consistent.c_str());
                nlohmann::json row;
                row["pair"] = fileA + "|" + fileB;
                row["k"] = kk;
                row["engine"] = engine;
                row["verdict"] = eng.show("equivalent", "distinguished");
                row["system"] = sysName;
                row["status"] = sysCell.show("feasible", "infeasible");
                row["consistent"] = consistent;
                rows.push_back(row);
            };

            for (int kk = 2; kk <= k; ++kk) {
                emit(kk, "wl", engineCell([&] { return wl(kk, a, b, budget).verdict.equivalent; }),
                     "sahalf", lpCell(kk, true));
                emit(kk, "weakwl",
                     engineCell([&] { return weak_wl(kk, a, b, budget).verdict.equivalent; }), "sa",
                     lpCell(kk, false));
                emit(kk, "lk", engineCell([&] { return lk(kk, a, b, budget).equivalent; }),
                     "bisohalf", boolCell(kk, true));
                emit(kk, "weaklk", engineCell([&] { return weak_lk(kk, a, b, budget).equivalent; }),
                     "biso", boolCell(kk, false));
            }
            if (!jsonFile.empty()) write_file(jsonFile, rows.dump(2) + "\n");
            std::cout << "RESULT " << (allConsistent ? "consistent" : "inconsistent") << "\n";
            return allConsistent ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << "RESULT error\n";
        return 2;
    }
    std::cout << "RESULT error\n";
    return 2;
}
