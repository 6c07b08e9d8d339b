#include "isolab/sa_build.hpp"
#include "test_util.hpp"

#include <doctest.h>
#include <set>

using namespace isolab;
using testutil::Rng;

namespace {

long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// equation rendered over variable keys with sign normalization, so equations
// from different systems compare structurally
std::string key_form(const EqSystem& sys, const Equation& e) {
    std::map<std::string, long> net;
    for (auto [v, c] : e.lhs) net[sys.vars[v].key()] += c;
    for (auto [v, c] : e.rhs) net[sys.vars[v].key()] -= c;
    long sign = 0;
    for (auto& [k, c] : net)
        if (c != 0) {
            sign = c > 0 ? 1 : -1;
            break;
        }
    if (sign == 0) sign = e.rhs_const >= 0 ? 1 : -1;
    std::string s;
    for (auto& [k, c] : net)
        if (c != 0) s += k + "*" + std::to_string(sign * c) + ";";
    return s + "|" + std::to_string(sign * e.rhs_const);
}

std::string bool_key_form(const EqSystem& sys, const Equation& e) {
    std::set<std::string> l, r;
    for (auto [v, c] : e.lhs) l.insert(sys.vars[v].key());
    for (auto [v, c] : e.rhs) r.insert(sys.vars[v].key());
    if (r < l) std::swap(l, r);
    std::string s;
    for (auto& k : l) s += k + ",";
    s += "=";
    for (auto& k : r) s += k + ",";
    return s + "|" + std::to_string(e.rhs_const);
}

} // namespace

TEST_CASE("build_iso counts: K3 vs K3") {
    Graph k3 = complete_graph(3);
    LinearSystem sys = build_iso(k3, k3);
    CHECK(sys.vars.size() == 9);
    int sums = 0, comps = 0;
    for (auto& e : sys.eqs) {
        if (e.tag == EqTag::Cont) ++sums;
        if (e.tag == EqTag::Comp) ++comps;
    }
    CHECK(sums == 6);
    CHECK(comps == 9);
}

TEST_CASE("build_iso: flat point solves C6 vs two triangles") {
    Graph c6 = cycle_graph(6);
    Graph cc = disjoint_union(cycle_graph(3), cycle_graph(3));
    LinearSystem sys = build_iso(c6, cc);
    RatAssignment x;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) x.set(PartialMap::of({{a, b}}), rat(1, 6));
    CHECK(verify_solution(sys, x).empty());
}

TEST_CASE("build_sa k=2 equals build_iso plus the normalization") {
    Rng rng(5);
    Graph g = testutil::random_graph(rng, 4);
    Graph h = testutil::random_graph(rng, 4);
    LinearSystem iso = build_iso(g, h);
    LinearSystem sa = build_sa(2, g, h);
    CHECK(sa.vars.size() == iso.vars.size() + 1);
    std::set<std::string> isoKeys, saKeys;
    for (auto& e : iso.eqs) isoKeys.insert(key_form(iso, e));
    for (auto e : sa.eqs) {
        // substitute X_empty = 1 into the equation
        Equation sub;
        sub.rhs_const = e.rhs_const;
        for (auto [v, c] : e.lhs) {
            if (sa.vars[v].empty()) sub.rhs_const -= c;
            else sub.lhs.emplace_back(v, c);
        }
        for (auto [v, c] : e.rhs) {
            if (sa.vars[v].empty()) sub.rhs_const += c;
            else sub.rhs.emplace_back(v, c);
        }
        if (sub.lhs.empty() && sub.rhs.empty()) continue; // X_empty = 1 itself
        saKeys.insert(key_form(sa, sub));
    }
    CHECK(isoKeys == saKeys);
}

TEST_CASE("variable counts follow the binomial formula") {
    Graph a3(3), b3(3);
    CHECK(build_sa(3, a3, b3).vars.size() == 1 + 9 + binom(9, 2)); // 46
    Graph a2(2), b2(2);
    CHECK(build_sa_half(2, a2, b2).vars.size() == 1 + 4 + binom(4, 2)); // 11
    Graph a4(4), b4(4);
    CHECK(build_sa_half(3, a4, b4).vars.size() == 1 + 16 + binom(16, 2) + binom(16, 3)); // 697
}

TEST_CASE("duplicate-pair augmentation forces the extra terms to zero") {
    Graph g = complete_graph(3), h = complete_graph(3);
    LinearSystem sys = build_sa(3, g, h);
    RatAssignment x;
    x.set(PartialMap{}, 1);
    x.set(PartialMap::of({{0, 0}}), 1);
    x.set(PartialMap::of({{0, 0}, {0, 1}}), 1); // not a local bijection
    CHECK_FALSE(verify_solution(sys, x).empty());
}

TEST_CASE("half system contains the plain system's equations") {
    Rng rng(7);
    for (int k = 2; k <= 3; ++k) {
        Graph g = testutil::random_graph(rng, 3);
        Graph h = testutil::random_graph(rng, 3);
        LinearSystem sa = build_sa(k, g, h);
        LinearSystem half = build_sa_half(k, g, h);
        std::set<std::string> halfKeys;
        for (auto& e : half.eqs) halfKeys.insert(key_form(half, e));
        for (auto& e : sa.eqs) CHECK(halfKeys.count(key_form(sa, e)) == 1);
    }
}

TEST_CASE("match2 emits exactly the directly enumerated constraint sets") {
    Graph g(3), h(3);
    BooleanSystem sys = build_biso(2, g, h, false);
    std::set<std::string> expected;
    long raw = 0;
    for (int a = 0; a < 3; ++a)
        for (int a2 = 0; a2 < 3; ++a2)
            for (int b = 0; b < 3; ++b)
                for (int b2 = 0; b2 < 3; ++b2) {
                    if (a == a2 || b == b2) continue;
                    raw += 2;
                    expected.insert(PartialMap::of({{a, b}, {a, b2}}).key());
                    expected.insert(PartialMap::of({{a, b}, {a2, b}}).key());
                }
    CHECK(raw == 72); // 36 instances per orientation
    std::set<std::string> got;
    for (auto& e : sys.eqs)
        if (e.tag == EqTag::Match2) {
            REQUIRE(e.lhs.size() == 1);
            got.insert(sys.vars[e.lhs[0].first].key());
        }
    CHECK(got == expected);
    CHECK(got.size() == 18);
}

TEST_CASE("biso on empty graphs is satisfied by the all-on point") {
    Graph a(2), b(2);
    BooleanSystem sys = build_biso(2, a, b, false);
    BoolAssignment x;
    x.set(PartialMap{}, Boolean(true));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) x.set(PartialMap::of({{i, j}}), Boolean(true));
    CHECK(verify_solution(sys, x).empty());
}

TEST_CASE("verify_solution reports violations with provenance") {
    Graph g = complete_graph(3);
    LinearSystem sys = build_sa(2, g, g);
    RatAssignment zero;
    auto rep = verify_solution(sys, zero);
    REQUIRE_FALSE(rep.empty());
    bool sawNorm = false;
    for (auto& v : rep.violations)
        if (v.tag == "norm") sawNorm = true;
    CHECK(sawNorm);

    RatAssignment x;
    x.set(PartialMap{}, 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) x.set(PartialMap::of({{a, b}}), rat(1, 3));
    CHECK(verify_solution(sys, x).empty());
    x.set(PartialMap::of({{0, 0}}), rat(1, 3) + rat(1, 1000));
    auto rep2 = verify_solution(sys, x);
    REQUIRE_FALSE(rep2.empty());
    bool sawCont = false;
    for (auto& v : rep2.violations)
        if (v.tag.rfind("cont", 0) == 0) sawCont = true;
    CHECK(sawCont);
}

TEST_CASE("system export/parse round trip") {
    Rng rng(9);
    Graph g = testutil::random_coloured_graph(rng, 3, 2);
    Graph h = testutil::random_coloured_graph(rng, 3, 2);
    for (int variant = 0; variant < 3; ++variant) {
        EqSystem sys = variant == 0   ? build_iso(g, h)
                       : variant == 1 ? build_sa(2, g, h)
                                      : build_biso(2, g, h, true);
        std::string text = export_system(sys);
        EqSystem back = parse_system(text);
        CHECK(back.boolean_mode == sys.boolean_mode);
        CHECK(export_system(back) == text);
        std::multiset<std::string> a, b;
        for (auto& e : sys.eqs)
            a.insert(sys.boolean_mode ? bool_key_form(sys, e) : key_form(sys, e));
        for (auto& e : back.eqs)
            b.insert(back.boolean_mode ? bool_key_form(back, e) : key_form(back, e));
        CHECK(a == b);
    }
}

TEST_CASE("equation families symmetric under swapping the graph pair") {
    Rng rng(21);
    Graph g = testutil::random_graph(rng, 3);
    Graph h = testutil::random_graph(rng, 3);
    LinearSystem ab = build_sa(2, g, h);
    LinearSystem ba = build_sa(2, h, g);
    auto transposed_key = [](const LinearSystem& sys, const Equation& e) {
        std::map<std::string, long> net;
        auto add = [&](const std::vector<std::pair<int, long>>& side, long sgn) {
            for (auto [v, c] : side) {
                auto pairs = sys.vars[v].pairs;
                for (auto& pr : pairs) std::swap(pr.first, pr.second);
                net[PartialMap::of(pairs).key()] += sgn * c;
            }
        };
        add(e.lhs, 1);
        add(e.rhs, -1);
        long sign = 0;
        for (auto& [k, c] : net)
            if (c != 0) {
                sign = c > 0 ? 1 : -1;
                break;
            }
        if (sign == 0) sign = e.rhs_const >= 0 ? 1 : -1;
        std::string s;
        for (auto& [k, c] : net)
            if (c != 0) s += k + "*" + std::to_string(sign * c) + ";";
        return s + "|" + std::to_string(sign * e.rhs_const);
    };
    std::multiset<std::string> left, right;
    for (auto& e : ab.eqs) left.insert(key_form(ab, e));
    for (auto& e : ba.eqs) right.insert(transposed_key(ba, e));
    CHECK(left == right);
}
