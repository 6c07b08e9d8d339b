#pragma once

#include "isolab/linear_system.hpp"
#include "isolab/matrix.hpp"

#include <map>
#include <numeric>
#include <optional>

namespace isolab {

// ---------------------------------------------------------------------------
// presolve

enum class PresolveStrength { BijectionOnly, Full };

struct PresolveResult {
    LinearSystem reduced;
    std::vector<PartialMap> forced_zero;
};

/// Removes variables that are zero in every solution: non-local-bijections
/// always (forced by continuity and nonnegativity, also at top size), and
/// non-local-isomorphisms at sizes below k always, at size k only for k >= 3.
inline PresolveResult presolve_zero(const LinearSystem& sys, int k, const Graph& gA,
                                    const Graph& gB,
                                    PresolveStrength strength = PresolveStrength::Full) {
    if (sys.boolean_mode) throw Error("presolve_zero: rational systems only");
    PresolveResult out;
    std::vector<char> zero(sys.vars.size(), 0);
    for (size_t i = 0; i < sys.vars.size(); ++i) {
        const PartialMap& p = sys.vars[i];
        bool z = !p.is_local_bijection();
        if (!z && strength == PresolveStrength::Full && !p.is_local_isomorphism(gA, gB))
            z = p.size() < k || k >= 3;
        if (z) {
            zero[i] = 1;
            out.forced_zero.push_back(p);
        }
    }
    LinearSystem& red = out.reduced;
    for (size_t i = 0; i < sys.vars.size(); ++i)
        if (!zero[i]) red.var(sys.vars[i]);
    for (const Equation& e : sys.eqs) {
        Equation ne;
        ne.tag = e.tag;
        ne.level = e.level;
        ne.rhs_const = e.rhs_const;
        for (auto [v, c] : e.lhs)
            if (!zero[v]) ne.lhs.emplace_back(red.var(sys.vars[v]), c);
        for (auto [v, c] : e.rhs)
            if (!zero[v]) ne.rhs.emplace_back(red.var(sys.vars[v]), c);
        if (ne.lhs.empty() && ne.rhs.empty() && ne.rhs_const == 0) continue;
        red.add_equation(std::move(ne));
    }
    return out;
}

// ---------------------------------------------------------------------------
// exact rational feasibility

struct FeasibilityResult {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    RatAssignment point; // feasible case
    // slot reserved for a Farkas-style certificate
    std::optional<std::vector<Rat>> certificate;
    bool feasible() const { return status == Status::Feasible; }
};

namespace detail {

struct NetRow {
    std::vector<std::pair<int, Rat>> terms; // sorted by variable
    Rat rhs;
    int pivot = -1; // pivot column after row reduction
};

inline std::vector<NetRow> net_rows(const LinearSystem& sys) {
    std::vector<NetRow> rows;
    for (const Equation& e : sys.eqs) {
        std::map<int, Rat> net;
        for (auto [v, c] : e.lhs) net[v] += c;
        for (auto [v, c] : e.rhs) net[v] -= c;
        NetRow row;
        row.rhs = e.rhs_const;
        for (auto& [v, c] : net)
            if (!is_zero(c)) row.terms.emplace_back(v, c);
        // normalize: leading coefficient positive
        if (!row.terms.empty() || !is_zero(row.rhs)) {
            Rat lead = row.terms.empty() ? row.rhs : row.terms.front().second;
            if (sgn(lead) < 0) {
                for (auto& [v, c] : row.terms) c = -c;
                row.rhs = -row.rhs;
            }
            rows.push_back(std::move(row));
        }
    }
    // deterministic: sort and dedupe rows
    std::sort(rows.begin(), rows.end(), [](const NetRow& a, const NetRow& b) {
        if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
        for (size_t i = 0; i < a.terms.size(); ++i) {
            if (a.terms[i].first != b.terms[i].first) return a.terms[i].first < b.terms[i].first;
            int c = cmp(a.terms[i].second, b.terms[i].second);
            if (c != 0) return c < 0;
        }
        return cmp(a.rhs, b.rhs) < 0;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const NetRow& a, const NetRow& b) {
                               return a.terms == b.terms && a.rhs == b.rhs;
                           }),
               rows.end());
    return rows;
}

} // namespace detail

/// Exact feasibility of an equality system with nonnegative variables.
/// Rows are first reduced to an independent set by Gauss-Jordan elimination
/// (catching 0 = c contradictions outright), then phase-I simplex from the
/// resulting crash basis decides the rest: Dantzig pricing while progress is
/// made, least-index (Bland) pivoting during stalls, so termination is
/// guaranteed. The returned point is exact and passes verify_solution.
inline FeasibilityResult lp_feasible(const LinearSystem& sys) {
    if (sys.boolean_mode) throw Error("lp_feasible: rational systems only");
    const int n = static_cast<int>(sys.vars.size());
    auto rows = detail::net_rows(sys);

    FeasibilityResult res;

    // Gaussian elimination to an independent row set, catching 0 = c early.
    {
        std::vector<std::vector<Rat>> mat;
        std::vector<Rat> rhs;
        std::vector<int> pivotCol;
        for (auto& row : rows) {
            std::vector<Rat> r(n, Rat(0));
            for (auto& [v, c] : row.terms) r[v] = c;
            Rat b = row.rhs;
            for (size_t i = 0; i < mat.size(); ++i) {
                int pc = pivotCol[i];
                if (is_zero(r[pc])) continue;
                Rat f = r[pc];
                for (int j = 0; j < n; ++j)
                    if (!is_zero(mat[i][j])) r[j] -= f * mat[i][j];
                b -= f * rhs[i];
            }
            int pc = -1;
            for (int j = 0; j < n; ++j)
                if (!is_zero(r[j])) {
                    pc = j;
                    break;
                }
            if (pc < 0) {
                if (!is_zero(b)) return res; // 0 = nonzero: infeasible
                continue;
            }
            Rat inv = 1 / r[pc];
            for (int j = 0; j < n; ++j) r[j] *= inv;
            b *= inv;
            // full reduction: clear this pivot column from the earlier rows,
            // so the pivot columns form an identity (a crash basis)
            for (size_t i = 0; i < mat.size(); ++i) {
                if (is_zero(mat[i][pc])) continue;
                Rat f = mat[i][pc];
                for (int j = 0; j < n; ++j)
                    if (!is_zero(r[j])) mat[i][j] -= f * r[j];
                rhs[i] -= f * b;
            }
            mat.push_back(std::move(r));
            rhs.push_back(std::move(b));
            pivotCol.push_back(pc);
        }
        rows.clear();
        for (size_t i = 0; i < mat.size(); ++i) {
            detail::NetRow row;
            for (int j = 0; j < n; ++j)
                if (!is_zero(mat[i][j])) row.terms.emplace_back(j, mat[i][j]);
            row.rhs = rhs[i];
            row.pivot = pivotCol[i];
            rows.push_back(std::move(row));
        }
    }

    const int m = static_cast<int>(rows.size());
    if (m == 0) {
        res.status = FeasibilityResult::Status::Feasible;
        return res; // all-zero point
    }

    // Phase-I tableau over the structural columns. The reduced rows with
    // nonnegative right-hand side enter the basis through their pivot column;
    // only rows with negative right-hand side need an artificial variable.
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(n + 1, Rat(0)));
    std::vector<int> basis(m);
    int artificials = 0;
    for (int i = 0; i < m; ++i) {
        bool neg = sgn(rows[i].rhs) < 0;
        for (auto& [v, c] : rows[i].terms) T[i][v] = neg ? -c : c;
        T[i][n] = neg ? -rows[i].rhs : rows[i].rhs;
        basis[i] = neg ? n + artificials++ : rows[i].pivot;
    }
    // reduced costs z_j - c_j: unit cost on the artificial basics
    std::vector<Rat> cost(n + 1, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n)
            for (int j = 0; j <= n; ++j) cost[j] += T[i][j];

    auto pivot = [&](int row, int col) {
        Rat inv = 1 / T[row][col];
        for (int j = 0; j <= n; ++j)
            if (!is_zero(T[row][j])) T[row][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == row || is_zero(T[i][col])) continue;
            Rat f = T[i][col];
            for (int j = 0; j <= n; ++j)
                if (!is_zero(T[row][j])) T[i][j] -= f * T[row][j];
        }
        if (!is_zero(cost[col])) {
            Rat f = cost[col];
            for (int j = 0; j <= n; ++j)
                if (!is_zero(T[row][j])) cost[j] -= f * T[row][j];
        }
        basis[row] = col;
    };

    // Dantzig's rule makes progress on these highly degenerate systems;
    // least-index (Bland) kicks in during stalls and guarantees termination.
    const int stallLimit = 2000;
    int stall = 0;
    while (true) {
        int enter = -1;
        if (stall >= stallLimit) {
            for (int j = 0; j < n; ++j)
                if (sgn(cost[j]) > 0) {
                    enter = j;
                    break;
                }
        } else {
            for (int j = 0; j < n; ++j)
                if (sgn(cost[j]) > 0 && (enter < 0 || cmp(cost[j], cost[enter]) > 0)) enter = j;
        }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        bool bland = stall >= stallLimit;
        for (int i = 0; i < m; ++i) {
            if (sgn(T[i][enter]) <= 0) continue;
            Rat ratio = T[i][n] / T[i][enter];
            bool better;
            if (leave < 0) better = true;
            else {
                int c = cmp(ratio, best);
                if (c != 0) better = c < 0;
                else if (bland) better = basis[i] < basis[leave];
                else {
                    // drive artificials out first, then least index
                    bool ai = basis[i] >= n, al = basis[leave] >= n;
                    better = ai != al ? ai : basis[i] < basis[leave];
                }
            }
            if (better) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break; // unbounded cannot happen in phase I
        if (is_zero(best)) ++stall;
        else stall = 0;
        pivot(leave, enter);
    }

    // objective value = sum of artificial basic values
    Rat obj(0);
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) obj += T[i][n];
    if (!is_zero(obj)) return res;

    res.status = FeasibilityResult::Status::Feasible;
    for (int i = 0; i < m; ++i)
        if (basis[i] < n && !is_zero(T[i][n])) res.point.set(sys.vars[basis[i]], T[i][n]);
    return res;
}

// ---------------------------------------------------------------------------
// boolean systems

struct BoolSolveResult {
    bool feasible = false;
    BoolAssignment point; // greatest solution when feasible
};

/// Greatest-solution fixpoint: start everything at 1; whenever one side of an
/// equation is 0, zero the other side; at the fixpoint check all equations.
inline BoolSolveResult bool_solve(const BooleanSystem& sys) {
    if (!sys.boolean_mode) throw Error("bool_solve: boolean systems only");
    const int n = static_cast<int>(sys.vars.size());
    for (const Equation& e : sys.eqs) {
        for (auto [v, c] : e.lhs)
            if (c != 1) throw Error("bool_solve: malformed equation shape");
        for (auto [v, c] : e.rhs)
            if (c != 1) throw Error("bool_solve: malformed equation shape");
        if (e.rhs_const != 0 && e.rhs_const != 1) throw Error("bool_solve: malformed equation shape");
        if (e.rhs_const == 1 && !e.rhs.empty()) throw Error("bool_solve: malformed equation shape");
    }

    std::vector<char> value(n, 1);
    // per-equation live counts per side; var -> equations queue propagation
    struct Side {
        std::vector<int> vars;
        int live = 0;
    };
    struct Row {
        Side l, r;
        long cst = 0;
    };
    std::vector<Row> rowsOf;
    std::vector<std::vector<int>> eqsOf(n);
    for (const Equation& e : sys.eqs) {
        Row row;
        row.cst = e.rhs_const;
        auto fill = [&](Side& s, const std::vector<std::pair<int, long>>& terms) {
            std::vector<int> vs;
            for (auto [v, c] : terms) vs.push_back(v);
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            s.vars = std::move(vs);
            s.live = static_cast<int>(s.vars.size());
        };
        fill(row.l, e.lhs);
        fill(row.r, e.rhs);
        int id = static_cast<int>(rowsOf.size());
        for (int v : row.l.vars) eqsOf[v].push_back(id);
        for (int v : row.r.vars) eqsOf[v].push_back(id);
        rowsOf.push_back(std::move(row));
    }

    std::vector<int> work(rowsOf.size());
    std::iota(work.begin(), work.end(), 0);
    std::vector<char> queued(rowsOf.size(), 1);
    std::vector<int> zeroQueue;
    auto setZero = [&](int v) {
        if (!value[v]) return;
        value[v] = 0;
        zeroQueue.push_back(v);
    };
    while (!work.empty() || !zeroQueue.empty()) {
        if (!zeroQueue.empty()) {
            int v = zeroQueue.back();
            zeroQueue.pop_back();
            for (int id : eqsOf[v]) {
                Row& row = rowsOf[id];
                // recount lazily
                int liveL = 0, liveR = 0;
                for (int x : row.l.vars) liveL += value[x];
                for (int x : row.r.vars) liveR += value[x];
                row.l.live = liveL;
                row.r.live = liveR;
                if (!queued[id]) {
                    queued[id] = 1;
                    work.push_back(id);
                }
            }
            continue;
        }
        int id = work.back();
        work.pop_back();
        queued[id] = 0;
        Row& row = rowsOf[id];
        bool lhsVal = row.l.live > 0;
        bool rhsVal = row.r.live > 0 || row.cst == 1;
        if (!rhsVal && lhsVal) {
            for (int v : row.l.vars) setZero(v);
        } else if (!lhsVal && row.r.live > 0 && row.cst == 0) {
            for (int v : row.r.vars) setZero(v);
        }
    }

    BoolSolveResult out;
    // fixpoint check
    for (const Row& row : rowsOf) {
        bool lhsVal = false, rhsVal = row.cst == 1;
        for (int v : row.l.vars) lhsVal = lhsVal || value[v];
        for (int v : row.r.vars) rhsVal = rhsVal || value[v];
        if (lhsVal != rhsVal) return out;
    }
    out.feasible = true;
    for (int v = 0; v < n; ++v)
        if (value[v]) out.point.set(sys.vars[v], Boolean(true));
    return out;
}

} // namespace isolab
