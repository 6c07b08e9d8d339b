#pragma once

#include "isolab/partial_map.hpp"
#include "isolab/semiring.hpp"

#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace isolab {

enum class EqTag { Norm, Cont, Comp, CompC, Match2 };

inline std::string tag_string(EqTag tag, int level, bool boolean_mode) {
    std::string s = boolean_mode ? "b" : "";
    switch (tag) {
    case EqTag::Norm: return s + "norm";
    case EqTag::Cont: return s + "cont" + std::to_string(level);
    case EqTag::Comp: return s + "comp" + std::to_string(level);
    case EqTag::CompC: return s + "compc" + std::to_string(level);
    case EqTag::Match2: return s + "match2";
    }
    return s + "?";
}

/// One equality: sum(lhs) = sum(rhs) + rhs_const. In boolean mode the sums are
/// v-sums, all coefficients are 1 and rhs_const is 0 or 1 with empty rhs.
struct Equation {
    EqTag tag = EqTag::Norm;
    int level = 0;
    std::vector<std::pair<int, long>> lhs, rhs; // (variable index, coefficient)
    long rhs_const = 0;
};

/// Sparse equality system over variables indexed by partial maps. Both the
/// rational systems (nonnegative variables implied) and the boolean systems
/// use this container; `boolean_mode` switches the arithmetic and the
/// admissible equation shapes.
struct EqSystem {
    bool boolean_mode = false;
    std::vector<PartialMap> vars;
    std::unordered_map<PartialMap, int, PartialMapHash> index;
    std::vector<Equation> eqs;

    int var(const PartialMap& p) {
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(vars.size());
        vars.push_back(p);
        index.emplace(p, id);
        return id;
    }

    int find_var(const PartialMap& p) const {
        auto it = index.find(p);
        return it == index.end() ? -1 : it->second;
    }

    // duplicate detection after canonicalization
    std::unordered_set<std::string> seen_;

    std::string canonical_key(const Equation& e) const {
        std::ostringstream os;
        if (boolean_mode) {
            auto side = [](std::vector<std::pair<int, long>> v) {
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
                return v;
            };
            auto l = side(e.lhs), r = side(e.rhs);
            if (r < l) std::swap(l, r);
            for (auto [v, c] : l) os << v << ",";
            os << "=";
            for (auto [v, c] : r) os << v << ",";
            os << "|" << e.rhs_const;
        } else {
            std::map<int, long> net;
            for (auto [v, c] : e.lhs) net[v] += c;
            for (auto [v, c] : e.rhs) net[v] -= c;
            for (auto it = net.begin(); it != net.end();)
                it = it->second == 0 ? net.erase(it) : std::next(it);
            long sign = 0;
            for (auto& [v, c] : net)
                if (c != 0) {
                    sign = c > 0 ? 1 : -1;
                    break;
                }
            if (sign == 0) sign = e.rhs_const >= 0 ? 1 : -1;
            for (auto& [v, c] : net) os << v << ":" << sign * c << ",";
            os << "|" << sign * e.rhs_const;
        }
        return std::move(os).str();
    }

    /// Adds the equation unless a canonically identical one is present.
    bool add_equation(Equation e) {
        std::string key = canonical_key(e);
        if (!seen_.insert(std::move(key)).second) return false;
        eqs.push_back(std::move(e));
        return true;
    }

    long raw_instances = 0; // instances generated before de-duplication
};

using LinearSystem = EqSystem;
using BooleanSystem = EqSystem;

template <class T>
struct Assignment {
    std::unordered_map<PartialMap, T, PartialMapHash> values;

    T get(const PartialMap& p) const {
        auto it = values.find(p);
        return it == values.end() ? semiring_zero<T>() : it->second;
    }
    void set(const PartialMap& p, T v) {
        if (is_zero(v)) values.erase(p);
        else values[p] = std::move(v);
    }
    size_t support_size() const { return values.size(); }
};

using RatAssignment = Assignment<Rat>;
using BoolAssignment = Assignment<Boolean>;

struct Violation {
    size_t eq = 0;
    std::string tag;
    std::string lhs, rhs; // evaluated sides, as text
};

struct ResidualReport {
    std::vector<Violation> violations;
    bool empty() const { return violations.empty(); }
};

namespace detail {

template <class T>
T eval_side(const EqSystem& sys, const std::vector<std::pair<int, long>>& side,
            const Assignment<T>& x) {
    T total = semiring_zero<T>();
    for (auto [v, c] : side) {
        T val = x.get(sys.vars[v]);
        if (is_zero(val)) continue;
        if constexpr (std::is_same_v<T, Rat>) total += Rat(c) * val;
        else total += val; // boolean coefficients are 1
    }
    return total;
}

} // namespace detail

/// Exact evaluation of every equation; empty report iff feasible point.
template <class T>
ResidualReport verify_solution(const EqSystem& sys, const Assignment<T>& x) {
    if constexpr (std::is_same_v<T, Rat>) {
        if (sys.boolean_mode) throw Error("verify_solution: rational point for boolean system");
    } else {
        if (!sys.boolean_mode) throw Error("verify_solution: boolean point for rational system");
    }
    ResidualReport rep;
    for (size_t i = 0; i < sys.eqs.size(); ++i) {
        const Equation& e = sys.eqs[i];
        T lhs = detail::eval_side(sys, e.lhs, x);
        T rhs = detail::eval_side(sys, e.rhs, x);
        if constexpr (std::is_same_v<T, Rat>) rhs += e.rhs_const;
        else if (e.rhs_const) rhs += semiring_one<T>();
        if (lhs != rhs)
            rep.violations.push_back({i, tag_string(e.tag, e.level, sys.boolean_mode),
                                      to_string(lhs), to_string(rhs)});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Export format:
//   vars <count>
//   v <id> <key>
//   eq <tag> : <coeff>*<id> ... = <coeff>*<id> ... | <rhs>
// Boolean systems carry the tag prefix 'b'.

inline std::string export_system(const EqSystem& sys) {
    // deterministic: variables by key order, equations by tag then content
    std::vector<int> order(sys.vars.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sys.vars[a] < sys.vars[b]; });
    std::vector<int> newId(sys.vars.size());
    for (size_t i = 0; i < order.size(); ++i) newId[order[i]] = static_cast<int>(i);

    std::ostringstream os;
    os << "vars " << sys.vars.size() << "\n";
    for (size_t i = 0; i < order.size(); ++i)
        os << "v " << i << " " << sys.vars[order[i]].key() << "\n";

    auto renderSide = [&](const std::vector<std::pair<int, long>>& side) {
        std::map<int, long> terms;
        for (auto [v, c] : side) terms[newId[v]] += c;
        std::string s;
        for (auto [v, c] : terms) {
            if (c == 0) continue;
            if (!s.empty()) s += ' ';
            s += std::to_string(c) + "*" + std::to_string(v);
        }
        return s;
    };
    std::vector<std::string> lines;
    for (const Equation& e : sys.eqs) {
        std::string line = "eq " + tag_string(e.tag, e.level, sys.boolean_mode) + " : " +
                           renderSide(e.lhs) + " = " + renderSide(e.rhs) + " | " +
                           std::to_string(e.rhs_const);
        lines.push_back(std::move(line));
    }
    std::stable_sort(lines.begin(), lines.end());
    for (auto& l : lines) os << l << "\n";
    return std::move(os).str();
}

inline EqSystem parse_system(const std::string& text) {
    EqSystem sys;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool sawBool = false, sawRat = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        auto fail = [&](const std::string& m) -> void {
            throw Error("system parse error at line " + std::to_string(lineno) + ": " + m);
        };
        if (kind == "vars") continue;
        if (kind == "v") {
            int id;
            std::string key;
            if (!(ls >> id >> key)) fail("bad variable line");
            int got = sys.var(PartialMap::parse_key(key));
            if (got != id) fail("variable ids must be dense and ordered");
        } else if (kind == "eq") {
            std::string tag, colon;
            if (!(ls >> tag >> colon) || colon != ":") fail("bad equation line");
            Equation e;
            std::string t = tag;
            if (!t.empty() && t[0] == 'b') {
                sawBool = true;
                t = t.substr(1);
            } else sawRat = true;
            if (t == "norm") e.tag = EqTag::Norm;
            else if (t == "match2") e.tag = EqTag::Match2;
            else if (t.rfind("contc", 0) == 0) fail("unknown tag " + tag);
            else if (t.rfind("compc", 0) == 0) {
                e.tag = EqTag::CompC;
                e.level = std::stoi(t.substr(5));
            } else if (t.rfind("cont", 0) == 0) {
                e.tag = EqTag::Cont;
                e.level = std::stoi(t.substr(4));
            } else if (t.rfind("comp", 0) == 0) {
                e.tag = EqTag::Comp;
                e.level = std::stoi(t.substr(4));
            } else fail("unknown tag " + tag);
            std::string tok;
            bool afterEq = false, afterBar = false;
            while (ls >> tok) {
                if (tok == "=") {
                    afterEq = true;
                    continue;
                }
                if (tok == "|") {
                    afterBar = true;
                    continue;
                }
                if (afterBar) {
                    e.rhs_const = std::stol(tok);
                    continue;
                }
                size_t star = tok.find('*');
                if (star == std::string::npos) fail("bad term " + tok);
                long c = std::stol(tok.substr(0, star));
                int v = std::stoi(tok.substr(star + 1));
                if (v < 0 || v >= static_cast<int>(sys.vars.size())) fail("bad variable id");
                (afterEq ? e.rhs : e.lhs).emplace_back(v, c);
            }
            sys.eqs.push_back(std::move(e));
        } else {
            fail("unknown line kind " + kind);
        }
    }
    if (sawBool && sawRat) throw Error("system parse error: mixed boolean and rational tags");
    sys.boolean_mode = sawBool;
    return sys;
}

} // namespace isolab
