#pragma once

#include "isolab/linear_system.hpp"
#include "isolab/matrix_analysis.hpp"
#include "isolab/pebble_game.hpp"
#include "isolab/refine.hpp"

namespace isolab {

enum class CanonicalMode { Full, Weak };

/// The block-uniform point built from the stable type colouring:
/// X_p = [types of the two sides agree] / realisation count of the type.
/// Full mode colours k-tuples, weak mode (k-1)-tuples; shorter tuples are
/// padded by repeating the last component.
inline RatAssignment canonical_solution(int k, const Graph& gA, const Graph& gB,
                                        CanonicalMode mode,
                                        long long budget = kDefaultEngineBudget) {
    RefineOutcome out = mode == CanonicalMode::Full ? wl(k, gA, gB, budget)
                                                    : weak_wl(k, gA, gB, budget);
    if (!out.verdict.equivalent)
        throw Error("canonical_solution: engine reports the pair distinguished");
    const TupleColouring& tc = out.colouring;
    const int maxSize = mode == CanonicalMode::Full ? k : k - 1;

    RatAssignment x;
    x.set(PartialMap{}, Rat(1));

    // support is downward closed: extend type-matching maps pair by pair,
    // in canonical order (each added pair is the largest)
    struct Frame {
        PartialMap p;
        std::vector<int> as, bs;
    };
    std::vector<Frame> stack;
    stack.push_back({PartialMap{}, {}, {}});
    const int m = gA.n, n = gB.n;
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.p.size() == maxSize) continue;
        int fromCode = f.p.empty() ? 0 : f.p.pairs.back().first * n + f.p.pairs.back().second + 1;
        for (int code = fromCode; code < m * n; ++code) {
            int a = code / n, b = code % n;
            Frame g;
            g.as = f.as;
            g.bs = f.bs;
            g.as.push_back(a);
            g.bs.push_back(b);
            int32_t ca = tc.colour_of(false, g.as);
            int32_t cb = tc.colour_of(true, g.bs);
            if (ca != cb) continue;
            g.p = f.p;
            g.p.pairs.emplace_back(a, b);
            x.set(g.p, Rat(1) / Rat(static_cast<long>(tc.realisations(false, ca))));
            stack.push_back(std::move(g));
        }
    }
    return x;
}

/// Boolean canonical point: X_p = 1 exactly on the surviving game positions
/// (strong game for the half system, weak game otherwise).
inline BoolAssignment bool_canonical_solution(int k, const Graph& gA, const Graph& gB, bool half,
                                              long long budget = 5'000'000) {
    PebbleGame game(k, gA, gB, /*weak=*/!half, budget);
    if (!game.equivalent())
        throw Error("bool_canonical_solution: game reports the pair distinguished");
    BoolAssignment x;
    game.for_each_alive([&](const std::vector<int32_t>& codes) {
        std::vector<std::pair<int, int>> pairs;
        for (int32_t c : codes) pairs.push_back(game.decode(c));
        x.set(PartialMap::of(std::move(pairs)), Boolean(true));
    });
    return x;
}

// ---------------------------------------------------------------------------
// good solutions

namespace detail {

/// Y matrix of a supported map: Y_ab = X_{p^ab} / X_p.
inline RatMatrix y_matrix(const RatAssignment& x, const PartialMap& p, int n) {
    Rat xp = x.get(p);
    RatMatrix y(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) y(a, b) = x.get(p.augmented(a, b)) / xp;
    return y;
}

/// The limit of (YY^t)^l Y: rows averaged over the blocks induced by YY^t.
/// Exact, block-uniform, doubly stochastic when Y is, and good by
/// construction.
inline RatMatrix block_uniform_hull(const RatMatrix& y) {
    Partition part = induced_partition(y * y.transpose());
    int n = y.rows;
    RatMatrix m(n, n);
    for (int i = 0; i < part.size(); ++i) {
        Rat inv = rat(1, static_cast<long>(part.blocks[i].size()));
        for (int b = 0; b < y.cols; ++b) {
            Rat sum(0);
            for (int a : part.blocks[i]) sum += y(a, b);
            sum *= inv;
            for (int a : part.blocks[i]) m(a, b) = sum;
        }
    }
    return m;
}

} // namespace detail

/// A solution is good when, for every supported p below the top size, the
/// associated doubly stochastic matrix Y has good XX^t and X^tX.
inline bool is_good_solution(const RatAssignment& x, const Graph& gA, const Graph& gB, int k) {
    if (gA.n != gB.n) throw Error("is_good_solution: m = n required");
    int n = gA.n;
    for (const auto& [p, v] : x.values) {
        if (p.size() >= k || is_zero(v)) continue;
        RatMatrix y = detail::y_matrix(x, p, n);
        if (y.has_null_line()) return false;
        if (!is_good(y)) return false;
    }
    return true;
}

/// Rebuilds a feasible point into a good one: descend the support, replacing
/// each extension layer by the block-uniform hull of its Y matrix (the exact
/// limit of (YY^t)^l Y). Finite powers fill the same support pattern but give
/// values that depend on which pair of the set is peeled off; the limit is
/// decomposition-independent, which set-indexed variables require. Each map's
/// value is derived from its canonical decomposition (largest pair removed)
/// and the result is verified feasible by the caller's checks.
inline RatAssignment goodify_solution(const RatAssignment& x, const Graph& gA, const Graph& gB,
                                      int k) {
    if (gA.n != gB.n) throw Error("goodify_solution: m = n required");
    const int n = gA.n;
    RatAssignment xh;
    xh.set(PartialMap{}, Rat(1));
    if (n == 0) return xh;

    // frontier of supported maps in the new solution, by size
    std::vector<PartialMap> layer{PartialMap{}};
    for (int size = 0; size < k; ++size) {
        std::vector<PartialMap> next;
        for (const PartialMap& p : layer) {
            Rat xp = x.get(p);
            if (is_zero(xp)) continue; // children stay zero
            Rat xhp = xh.get(p);
            if (is_zero(xhp)) continue;
            RatMatrix y = detail::y_matrix(x, p, n);
            RatMatrix m = detail::block_uniform_hull(y);
            int fromCode =
                p.empty() ? 0 : p.pairs.back().first * n + p.pairs.back().second + 1;
            for (int code = fromCode; code < n * n; ++code) {
                int a = code / n, b = code % n;
                if (is_zero(m(a, b))) continue;
                PartialMap s = p;
                s.pairs.emplace_back(a, b);
                xh.set(s, xhp * m(a, b));
                if (size + 1 < k) next.push_back(s);
            }
        }
        layer = std::move(next);
    }
    return xh;
}

// ---------------------------------------------------------------------------
// support-driven verification of the hierarchy equations
//
// Equation instances whose variables all lie outside the support hold
// trivially (0 = 0), so checking every instance that touches a downward-closed
// support verifies the entire system without materializing it.

template <class T>
ResidualReport verify_sa_sparse(int k, const Graph& gA, const Graph& gB, const Assignment<T>& x,
                                bool half) {
    ResidualReport rep;
    auto complain = [&](const std::string& tag, const T& lhs, const T& rhs) {
        rep.violations.push_back({0, tag, to_string(lhs), to_string(rhs)});
    };

    const bool boolean = std::is_same_v<T, Boolean>;
    const int m = gA.n, n = gB.n;
    const int maxSize = half ? k : k - 1;
    const int contTop = half ? k : k - 1;

    // X_empty = 1
    if (x.get(PartialMap{}) != semiring_one<T>())
        complain("norm", x.get(PartialMap{}), semiring_one<T>());

    // support must be downward closed, otherwise instances away from the
    // support could be violated unnoticed
    for (const auto& [p, v] : x.values) {
        if (is_zero(v)) continue;
        if (p.size() > maxSize) {
            complain("size", v, semiring_zero<T>());
            continue;
        }
        for (auto [a, b] : p.pairs)
            if (is_zero(x.get(p.without(a, b)))) complain("closure", v, semiring_zero<T>());
    }
    if (!rep.empty()) return rep;

    for (const auto& [p, v] : x.values) {
        if (is_zero(v)) continue;
        // CONT instances with this p on the left
        if (p.size() <= contTop - 1) {
            for (int a = 0; a < m; ++a) {
                T sum = semiring_zero<T>();
                for (int b2 = 0; b2 < n; ++b2) sum += x.get(p.augmented(a, b2));
                if (sum != v) {
                    complain(tag_string(EqTag::Cont, p.size() + 1, boolean), v, sum);
                    return rep;
                }
            }
            for (int b = 0; b < n; ++b) {
                T sum = semiring_zero<T>();
                for (int a2 = 0; a2 < m; ++a2) sum += x.get(p.augmented(a2, b));
                if (sum != v) {
                    complain(tag_string(EqTag::Cont, p.size() + 1, boolean), v, sum);
                    return rep;
                }
            }
        }
        // COMP instances with this p as the base
        if (p.size() <= k - 2) {
            int rounds = boolean ? 2 : 1; // boolean systems add the complement family
            for (int family = 0; family < rounds; ++family) {
                bool compl_ = family == 1;
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < n; ++b) {
                        T lhs = semiring_zero<T>(), rhs = semiring_zero<T>();
                        for (int a2 = 0; a2 < m; ++a2) {
                            bool adj = compl_ ? (a2 != a && !gA.edge(a, a2)) : gA.edge(a, a2);
                            if (adj) lhs += x.get(p.augmented(a2, b));
                        }
                        for (int b2 = 0; b2 < n; ++b2) {
                            bool adj = compl_ ? (b2 != b && !gB.edge(b2, b)) : gB.edge(b2, b);
                            if (adj) rhs += x.get(p.augmented(a, b2));
                        }
                        if (lhs != rhs) {
                            complain(tag_string(compl_ ? EqTag::CompC : EqTag::Comp, p.size() + 1,
                                                boolean),
                                     lhs, rhs);
                            return rep;
                        }
                    }
            }
        }
        // MATCH2 and the colour constraints bind on the support directly
        if (!p.is_local_bijection()) complain("match", v, semiring_zero<T>());
        for (auto [a, b] : p.pairs)
            if (gA.colour(a) != gB.colour(b)) complain("colour", v, semiring_zero<T>());
        if (!rep.empty()) return rep;
    }
    return rep;
}

} // namespace isolab
