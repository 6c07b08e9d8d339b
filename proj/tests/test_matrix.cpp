#include "isolab/matrix_analysis.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace isolab;
using testutil::Rng;

namespace {

// independent component oracle: repeated neighbourhood expansion, no union-find
template <class T>
std::vector<int> component_oracle(const Matrix<T>& z) {
    int n = z.rows;
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> frontier{s};
        comp[s] = next;
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (int w = 0; w < n; ++w)
                if (comp[w] < 0 && (!is_zero(z(v, w)) || !is_zero(z(w, v)))) {
                    comp[w] = next;
                    frontier.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

RatMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows.begin()->size());
    RatMatrix m(r, c);
    int i = 0;
    for (auto& row : rows) {
        int j = 0;
        for (long v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

} // namespace

TEST_CASE("digraph_of and irreducibility basics") {
    RatMatrix id = RatMatrix::identity(3);
    auto g = digraph_of(id);
    CHECK(g.n == 3);
    for (int v = 0; v < 3; ++v) CHECK(g.out[v] == std::vector<int>{v});

    RatMatrix zero(2, 2);
    auto gz = digraph_of(zero);
    CHECK(gz.out[0].empty());
    CHECK(gz.out[1].empty());

    RatMatrix single(2, 2);
    single(0, 1) = 1;
    auto gs = digraph_of(single);
    CHECK(gs.out[0] == std::vector<int>{1});
    CHECK(gs.out[1].empty());

    RatMatrix ones(3, 3);
    for (auto& v : ones.a) v = 1;
    CHECK(is_irreducible(ones));
    CHECK_FALSE(is_irreducible(RatMatrix::identity(2)));
    RatMatrix cyc(2, 2);
    cyc(0, 1) = cyc(1, 0) = 1;
    CHECK(is_irreducible(cyc));

    RatMatrix rect(2, 3);
    CHECK_THROWS_AS(digraph_of(rect), Error);
    RatMatrix neg(2, 2);
    neg(0, 0) = -1;
    CHECK_THROWS_AS(is_irreducible(neg), Error);
}

TEST_CASE("induced partition: fixed examples") {
    auto z = from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    Partition p = induced_partition(z);
    REQUIRE(p.size() == 2);
    CHECK(p.blocks[0] == std::vector<int>{0, 1});
    CHECK(p.blocks[1] == std::vector<int>{2});

    Partition pid = induced_partition(RatMatrix::identity(4));
    CHECK(pid.size() == 4);

    RatMatrix asym(2, 2);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(induced_partition(asym), Error);
}

TEST_CASE("induced partition of XX^t matches component oracle") {
    Rng rng(2024);
    for (int iter = 0; iter < 50; ++iter) {
        RatMatrix x = testutil::random_doubly_stochastic(rng, 5);
        RatMatrix z = x * x.transpose();
        Partition p = induced_partition(z);
        auto comp = component_oracle(z);
        Partition q = Partition::from_labels(comp);
        CHECK(p.same_blocks(q));
        // post: off-diagonal blocks vanish, diagonal minors irreducible
        for (int i = 0; i < z.rows; ++i)
            for (int j = 0; j < z.rows; ++j)
                if (p.block_of[i] != p.block_of[j]) CHECK(is_zero(z(i, j)));
    }
}

TEST_CASE("good symmetric matrices and good powers") {
    CHECK(is_good_symmetric(RatMatrix::identity(3)));

    RatMatrix half = from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    for (auto& v : half.a) v /= 2;
    half(2, 2) = 1;
    CHECK(is_good_symmetric(half));

    // path pattern: one block with an interior zero
    auto path = from_rows({{1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 1}, {0, 0, 1, 1}});
    CHECK_FALSE(is_good_symmetric(path));
    RatMatrix gp = good_power(path);
    CHECK(is_good_symmetric(gp));
    // oracle for the claim: z^l > 0 on the block for every l >= n-1
    RatMatrix probe = path.pow(3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(!is_zero(probe(i, j)));

    RatMatrix zdiag = from_rows({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(is_good_symmetric(zdiag), Error);
    CHECK_THROWS_AS(good_power(zdiag), Error);
}

TEST_CASE("partition of z equals partition of good_power(z), both modes") {
    Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + iter % 6;
        RatMatrix z = testutil::random_symmetric_nonneg(rng, n, 0.35);
        CHECK(induced_partition(z).same_blocks(induced_partition(good_power(z))));
        BoolMatrix b = testutil::random_bool_symmetric(rng, n, 0.35);
        CHECK(induced_partition(b).same_blocks(induced_partition(good_power(b))));
    }
}

TEST_CASE("x-related partitions: fixed examples") {
    auto rel = x_related_partitions(RatMatrix::identity(3));
    CHECK(rel.row.size() == 3);
    CHECK(rel.col.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(rel.row.block_of[i] == rel.col.block_of[i]);

    RatMatrix ones(2, 3);
    for (auto& v : ones.a) v = 1;
    auto rel2 = x_related_partitions(ones);
    CHECK(rel2.row.size() == 1);
    CHECK(rel2.col.size() == 1);

    RatMatrix withNull(2, 2);
    withNull(0, 0) = 1;
    CHECK_THROWS_AS(x_related_partitions(withNull), Error);
}

TEST_CASE("x-related partitions satisfy the recovery identities") {
    Rng rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        BoolMatrix x = testutil::random_bool_matrix(rng, 5, 6, 0.3);
        testutil::fix_null_lines(rng, x);
        auto rel = x_related_partitions(x);
        // D'_i = { d' : X_{dd'} > 0 for some d in D_i } and conversely
        for (int i = 0; i < rel.row.size(); ++i) {
            std::vector<int> dPrime;
            for (int d2 = 0; d2 < x.cols; ++d2) {
                bool hit = false;
                for (int d : rel.row.blocks[i])
                    if (!is_zero(x(d, d2))) hit = true;
                if (hit) dPrime.push_back(d2);
            }
            CHECK(dPrime == rel.col.blocks[i]);
            std::vector<int> dBack;
            for (int d = 0; d < x.rows; ++d) {
                bool hit = false;
                for (int d2 : rel.col.blocks[i])
                    if (!is_zero(x(d, d2))) hit = true;
                if (hit) dBack.push_back(d);
            }
            CHECK(dBack == rel.row.blocks[i]);
        }
    }
}

TEST_CASE("doubly stochastic relatedness: permutation, flat, and C6/2C3 witness") {
    auto relP = check_stochastic_relatedness(testutil::permutation_matrix({2, 0, 1}));
    CHECK(relP.all_hold());
    CHECK(relP.partitions.row.size() == 3);

    RatMatrix flat(4, 4);
    for (auto& v : flat.a) v = rat(1, 4);
    auto relF = check_stochastic_relatedness(flat);
    CHECK(relF.all_hold());
    CHECK(relF.partitions.row.size() == 1);

    // canonical ISO[1] point for C_6 vs C_3+C_3 is the flat matrix J/6
    RatMatrix j6(6, 6);
    for (auto& v : j6.a) v = rat(1, 6);
    auto rel6 = check_stochastic_relatedness(j6);
    CHECK(rel6.all_hold());

    RatMatrix notDs(2, 2);
    notDs(0, 0) = 1;
    notDs(1, 1) = 2;
    CHECK_THROWS_AS(check_stochastic_relatedness(notDs), Error);
}

TEST_CASE("doubly stochastic relatedness on random instances") {
    Rng rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + iter % 6;
        RatMatrix x = testutil::random_doubly_stochastic(rng, n, 2 + iter % 3);
        CHECK(check_stochastic_relatedness(x).all_hold());
    }
}

TEST_CASE("stability: fixed examples") {
    Graph c4 = cycle_graph(4);
    Partition one = Partition::from_labels(std::vector<int>(4, 0));
    auto rep = stability(c4.adjacency<Rat>(), one);
    CHECK(rep.stable);
    CHECK(rep.row_params(0, 0) == 2);

    Graph star(4); // K_{1,3}, centre 0
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    Partition cl = Partition::from_labels({0, 1, 1, 1});
    auto rep2 = stability(star.adjacency<Rat>(), cl);
    CHECK(rep2.stable);
    CHECK(rep2.row_params(0, 0) == 0);
    CHECK(rep2.row_params(0, 1) == 3);
    CHECK(rep2.row_params(1, 0) == 1);
    CHECK(rep2.row_params(1, 1) == 0);

    // discrete partitions are always stable
    Rng rng(3);
    for (int iter = 0; iter < 20; ++iter) {
        RatMatrix m = testutil::random_symmetric_nonneg(rng, 5, 0.5);
        std::vector<int> labels = {0, 1, 2, 3, 4};
        CHECK(stability(m, Partition::from_labels(labels)).stable);
    }

    Partition wrong = Partition::from_labels({0, 1});
    CHECK_THROWS_AS(stability(c4.adjacency<Rat>(), wrong), Error);
}

TEST_CASE("commuting with XX^t implies stability (rational and boolean)") {
    // witnesses built from the coarsest stable partition: X block-uniform
    Rng rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        Graph g = testutil::random_graph(rng, 3 + iter % 6);
        // coarsest stable partition by naive refinement: split by neighbour counts
        int n = g.n;
        std::vector<int> cls(n, 0);
        for (bool changed = true; changed;) {
            changed = false;
            std::vector<std::vector<int>> sig(n);
            for (int v = 0; v < n; ++v) {
                int c = *std::max_element(cls.begin(), cls.end()) + 1;
                sig[v].assign(c, 0);
                for (int u = 0; u < n; ++u)
                    if (g.edge(v, u)) ++sig[v][cls[u]];
                sig[v].push_back(cls[v]);
            }
            std::vector<int> next(n, -1);
            int id = 0;
            for (int v = 0; v < n; ++v) {
                if (next[v] >= 0) continue;
                for (int w = v; w < n; ++w)
                    if (next[w] < 0 && sig[w] == sig[v]) next[w] = id;
                ++id;
            }
            if (next != cls) {
                cls = next;
                changed = true;
            }
        }
        Partition part = Partition::from_labels(cls);

        RatMatrix x(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (part.block_of[a] == part.block_of[b])
                    x(a, b) = rat(1, static_cast<long>(part.blocks[part.block_of[a]].size()));
        RatMatrix adj = g.adjacency<Rat>();
        REQUIRE(adj * x == x * adj); // witness really commutes
        auto rep = stability(adj, induced_partition(x * x.transpose()));
        CHECK(rep.stable);

        BoolMatrix xb(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                xb(a, b) = Boolean(part.block_of[a] == part.block_of[b]);
        BoolMatrix adjB = g.adjacency<Boolean>();
        REQUIRE(adjB * xb == xb * adjB);
        auto repB = stability(adjB, induced_partition(xb * xb.transpose()));
        CHECK(repB.stable);
    }
}

TEST_CASE("boolean bi-stability differs from plain boolean stability") {
    // stable for A but not for its complement: within {1,2}, vertex 1 sees
    // every vertex of {3,4} while vertex 2 misses one
    Graph g(4);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    Partition part = Partition::from_labels({0, 0, 1, 1});
    BoolMatrix adj = g.adjacency<Boolean>();
    auto rep = stability_boolean(adj, part);
    CHECK(rep.stable);
    CHECK(rep.bistable_checked);
    CHECK_FALSE(rep.bi_stable);
    CHECK(rep.row_params(0, 1) == Boolean(true));
    CHECK(rep.row_params(0, 0) == Boolean(false));

    // a cycle with the one-block partition is bi-stable
    Graph c5 = cycle_graph(5);
    auto rep2 = stability_boolean(c5.adjacency<Boolean>(), Partition::from_labels({0, 0, 0, 0, 0}));
    CHECK(rep2.stable);
    CHECK(rep2.bi_stable);

    // in rational arithmetic the same partition is stable for the complement
    // exactly when it is stable for the graph
    auto ratG = stability(g.adjacency<Rat>(), part);
    auto ratC = stability(complement(g).adjacency<Rat>(), part);
    CHECK(ratG.stable == ratC.stable);
}

TEST_CASE("fixed space dimension") {
    CHECK(fixed_space_dimension(RatMatrix::identity(5)) == 5);

    // irreducible doubly stochastic with positive diagonal: dimension 1
    auto m = from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    for (auto& v : m.a) v /= 3;
    CHECK(fixed_space_dimension(m) == 1);

    // block diagonal of s such blocks has dimension s
    RatMatrix bd(6, 6);
    for (int blk = 0; blk < 2; ++blk)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) bd(3 * blk + i, 3 * blk + j) = rat(1, 3);
    CHECK(fixed_space_dimension(bd) == 2);

    RatMatrix notDs = from_rows({{1, 1}, {0, 1}});
    CHECK_THROWS_AS(fixed_space_dimension(notDs), Error);
}

TEST_CASE("fixed space dimension equals induced block count for Z = XX^t") {
    Rng rng(42);
    for (int iter = 0; iter < 100; ++iter) {
        int n = 2 + iter % 6;
        RatMatrix x = testutil::random_doubly_stochastic(rng, n, 2 + iter % 2);
        RatMatrix z = x * x.transpose();
        CHECK(fixed_space_dimension(z) == induced_partition(z).size());
    }
}

TEST_CASE("boolean fixed vectors") {
    auto basis = boolean_fixed_vectors(BoolMatrix::identity(3));
    REQUIRE(basis.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(basis[i][j] == Boolean(i == j));

    BoolMatrix ones(3, 3);
    for (auto& v : ones.a) v = Boolean(true);
    auto all = boolean_fixed_vectors(ones);
    REQUIRE(all.size() == 1);
    for (auto b : all[0]) CHECK(b == Boolean(true));

    BoolMatrix two(4, 4);
    for (int i : {0, 1})
        for (int j : {0, 1}) two(i, j) = Boolean(true);
    for (int i : {2, 3})
        for (int j : {2, 3}) two(i, j) = Boolean(true);
    auto pair = boolean_fixed_vectors(two);
    REQUIRE(pair.size() == 2);

    BoolMatrix zeroDiag(2, 2);
    CHECK_THROWS_AS(boolean_fixed_vectors(zeroDiag), Error);
}

TEST_CASE("matrix render uses p/q entries") {
    RatMatrix m(1, 2);
    m(0, 0) = rat(1, 3);
    m(0, 1) = rat(-2, 1);
    CHECK(m.render() == "1/3 -2\n");
}
