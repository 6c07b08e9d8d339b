#pragma once

#include "isolab/linear_system.hpp"

#include <functional>

namespace isolab {

namespace detail {

inline void enumerate_maps(int m, int n, int maxSize, std::vector<std::pair<int, int>>& cur,
                           int fromCode, long long cap, long long& count,
                           const std::function<void(const PartialMap&)>& fn) {
    {
        PartialMap p;
        p.pairs = cur;
        fn(p);
    }
    if (++count > cap) throw BudgetExceeded("variable enumeration exceeds cap");
    if (static_cast<int>(cur.size()) == maxSize) return;
    for (int code = fromCode; code < m * n; ++code) {
        cur.emplace_back(code / n, code % n);
        enumerate_maps(m, n, maxSize, cur, code + 1, cap, count, fn);
        cur.pop_back();
    }
}

} // namespace detail

/// All partial maps of size <= maxSize, canonical order within each branch.
inline void for_each_partial_map(int m, int n, int maxSize,
                                 const std::function<void(const PartialMap&)>& fn,
                                 long long cap = 2'000'000) {
    std::vector<std::pair<int, int>> cur;
    long long count = 0;
    detail::enumerate_maps(m, n, maxSize, cur, 0, cap, count, fn);
}

namespace detail {

inline void add_colour_zeros(EqSystem& sys, const Graph& gA, const Graph& gB) {
    if (!gA.coloured() && !gB.coloured()) return;
    for (int a = 0; a < gA.n; ++a)
        for (int b = 0; b < gB.n; ++b) {
            if (gA.colour(a) == gB.colour(b)) continue;
            Equation e;
            e.tag = EqTag::Norm;
            e.lhs = {{sys.var(PartialMap::of({{a, b}})), 1}};
            sys.add_equation(std::move(e));
        }
}

inline void add_cont(EqSystem& sys, int m, int n, int level) {
    // X_p = sum_b' X_{p^ab'} and X_p = sum_a' X_{p^a'b}, |p| = level-1
    std::vector<int> atSize;
    for (size_t i = 0; i < sys.vars.size(); ++i)
        if (sys.vars[i].size() == level - 1) atSize.push_back(static_cast<int>(i));
    for (int pi : atSize) {
        const PartialMap p = sys.vars[pi];
        for (int a = 0; a < m; ++a) {
            Equation e;
            e.tag = EqTag::Cont;
            e.level = level;
            e.lhs = {{pi, 1}};
            for (int b2 = 0; b2 < n; ++b2) e.rhs.emplace_back(sys.var(p.augmented(a, b2)), 1);
            ++sys.raw_instances;
            sys.add_equation(std::move(e));
        }
        for (int b = 0; b < n; ++b) {
            Equation e;
            e.tag = EqTag::Cont;
            e.level = level;
            e.lhs = {{pi, 1}};
            for (int a2 = 0; a2 < m; ++a2) e.rhs.emplace_back(sys.var(p.augmented(a2, b)), 1);
            ++sys.raw_instances;
            sys.add_equation(std::move(e));
        }
    }
}

inline void add_comp(EqSystem& sys, const Graph& gA, const Graph& gB, int level,
                     bool complemented) {
    // sum_a' A_{aa'} X_{p^a'b} = sum_b' X_{p^ab'} B_{b'b}, |p| = level-1
    std::vector<int> atSize;
    for (size_t i = 0; i < sys.vars.size(); ++i)
        if (sys.vars[i].size() == level - 1) atSize.push_back(static_cast<int>(i));
    for (int pi : atSize) {
        const PartialMap p = sys.vars[pi];
        for (int a = 0; a < gA.n; ++a) {
            for (int b = 0; b < gB.n; ++b) {
                Equation e;
                e.tag = complemented ? EqTag::CompC : EqTag::Comp;
                e.level = level;
                for (int a2 = 0; a2 < gA.n; ++a2) {
                    bool adj = complemented ? (a2 != a && !gA.edge(a, a2)) : gA.edge(a, a2);
                    if (adj) e.lhs.emplace_back(sys.var(p.augmented(a2, b)), 1);
                }
                for (int b2 = 0; b2 < gB.n; ++b2) {
                    bool adj = complemented ? (b2 != b && !gB.edge(b2, b)) : gB.edge(b2, b);
                    if (adj) e.rhs.emplace_back(sys.var(p.augmented(a, b2)), 1);
                }
                ++sys.raw_instances;
                sys.add_equation(std::move(e));
            }
        }
    }
}

inline void add_norm(EqSystem& sys) {
    Equation e;
    e.tag = EqTag::Norm;
    e.lhs = {{sys.var(PartialMap{}), 1}};
    e.rhs_const = 1;
    sys.add_equation(std::move(e));
}

} // namespace detail

/// The fractional isomorphism system: row/column sums one plus AX = XB over
/// the size-1 variables. Coloured vertices force mismatching variables to 0.
inline LinearSystem build_iso(const Graph& gA, const Graph& gB) {
    LinearSystem sys;
    for (int a = 0; a < gA.n; ++a)
        for (int b = 0; b < gB.n; ++b) sys.var(PartialMap::of({{a, b}}));
    for (int a = 0; a < gA.n; ++a) {
        Equation e;
        e.tag = EqTag::Cont;
        e.level = 1;
        for (int b2 = 0; b2 < gB.n; ++b2) e.lhs.emplace_back(sys.var(PartialMap::of({{a, b2}})), 1);
        e.rhs_const = 1;
        ++sys.raw_instances;
        sys.add_equation(std::move(e));
    }
    for (int b = 0; b < gB.n; ++b) {
        Equation e;
        e.tag = EqTag::Cont;
        e.level = 1;
        for (int a2 = 0; a2 < gA.n; ++a2) e.lhs.emplace_back(sys.var(PartialMap::of({{a2, b}})), 1);
        e.rhs_const = 1;
        ++sys.raw_instances;
        sys.add_equation(std::move(e));
    }
    for (int a = 0; a < gA.n; ++a)
        for (int b = 0; b < gB.n; ++b) {
            Equation e;
            e.tag = EqTag::Comp;
            e.level = 1;
            for (int a2 = 0; a2 < gA.n; ++a2)
                if (gA.edge(a, a2)) e.lhs.emplace_back(sys.var(PartialMap::of({{a2, b}})), 1);
            for (int b2 = 0; b2 < gB.n; ++b2)
                if (gB.edge(b2, b)) e.rhs.emplace_back(sys.var(PartialMap::of({{a, b2}})), 1);
            ++sys.raw_instances;
            sys.add_equation(std::move(e));
        }
    detail::add_colour_zeros(sys, gA, gB);
    return sys;
}

/// ISO[k-1]: variables X_p for |p| <= k-1, CONT and COMP up to level k-1.
inline LinearSystem build_sa(int k, const Graph& gA, const Graph& gB,
                             long long var_cap = 2'000'000) {
    if (k < 2) throw Error("build_sa: k must be >= 2");
    LinearSystem sys;
    for_each_partial_map(gA.n, gB.n, k - 1, [&](const PartialMap& p) { sys.var(p); }, var_cap);
    detail::add_norm(sys);
    for (int level = 1; level < k; ++level) {
        detail::add_cont(sys, gA.n, gB.n, level);
        detail::add_comp(sys, gA, gB, level, false);
    }
    detail::add_colour_zeros(sys, gA, gB);
    return sys;
}

/// ISO[k-1/2]: variables X_p for |p| <= k, CONT up to level k, COMP below k.
inline LinearSystem build_sa_half(int k, const Graph& gA, const Graph& gB,
                                  long long var_cap = 2'000'000) {
    if (k < 2) throw Error("build_sa_half: k must be >= 2");
    LinearSystem sys;
    for_each_partial_map(gA.n, gB.n, k, [&](const PartialMap& p) { sys.var(p); }, var_cap);
    detail::add_norm(sys);
    for (int level = 1; level <= k; ++level) {
        detail::add_cont(sys, gA.n, gB.n, level);
        if (level < k) detail::add_comp(sys, gA, gB, level, false);
    }
    detail::add_colour_zeros(sys, gA, gB);
    return sys;
}

/// BISO[k-1] (or BISO[k-1/2] with `half`): boolean continuity plus MATCH2 and
/// compatibility for both the adjacency matrices and their complements.
inline BooleanSystem build_biso(int k, const Graph& gA, const Graph& gB, bool half,
                                long long var_cap = 2'000'000) {
    if (k < 2) throw Error("build_biso: k must be >= 2");
    BooleanSystem sys;
    sys.boolean_mode = true;
    for_each_partial_map(gA.n, gB.n, half ? k : k - 1, [&](const PartialMap& p) { sys.var(p); },
                         var_cap);
    detail::add_norm(sys);
    int contTop = half ? k : k - 1;
    for (int level = 1; level <= contTop; ++level) detail::add_cont(sys, gA.n, gB.n, level);
    // MATCH2: the two non-bijective augmentations of a single pair vanish.
    // Emitted once per distinct set; the raw instance count covers the full
    // quantification over a != a', b != b'.
    sys.raw_instances += 2LL * gA.n * (gA.n - 1) * gB.n * (gB.n - 1);
    auto matchZero = [&](int a, int b, int a2, int b2) {
        Equation e;
        e.tag = EqTag::Match2;
        e.lhs = {{sys.var(PartialMap::of({{a, b}, {a2, b2}})), 1}};
        sys.add_equation(std::move(e));
    };
    if (gA.n >= 2 && gB.n >= 2) {
        for (int a = 0; a < gA.n; ++a)
            for (int b = 0; b < gB.n; ++b)
                for (int b2 = b + 1; b2 < gB.n; ++b2) matchZero(a, b, a, b2);
        for (int b = 0; b < gB.n; ++b)
            for (int a = 0; a < gA.n; ++a)
                for (int a2 = a + 1; a2 < gA.n; ++a2) matchZero(a, b, a2, b);
    }
    for (int level = 1; level < k; ++level) {
        detail::add_comp(sys, gA, gB, level, false);
        detail::add_comp(sys, gA, gB, level, true);
    }
    detail::add_colour_zeros(sys, gA, gB);
    return sys;
}

} // namespace isolab
