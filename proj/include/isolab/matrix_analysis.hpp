#pragma once

#include "isolab/matrix.hpp"
#include "isolab/partition.hpp"

#include <vector>

namespace isolab {

struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> out;
};

template <class T>
Digraph digraph_of(const Matrix<T>& x) {
    if (!x.square()) throw Error("digraph_of: non-square input");
    Digraph g;
    g.n = x.rows;
    g.out.assign(g.n, {});
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (!is_zero(x(i, j))) g.out[i].push_back(j);
    return g;
}

namespace detail {

inline std::vector<char> reachable(const Digraph& g, int start, bool reversed) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    std::vector<std::vector<int>> rev;
    if (reversed) {
        rev.assign(g.n, {});
        for (int i = 0; i < g.n; ++i)
            for (int j : g.out[i]) rev[j].push_back(i);
    }
    const auto& adj = reversed ? rev : g.out;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

} // namespace detail

/// Irreducible = the digraph of nonzero entries is strongly connected.
template <class T>
bool is_irreducible(const Matrix<T>& x) {
    if (!x.square()) throw Error("is_irreducible: non-square input");
    if (!x.is_nonnegative()) throw Error("is_irreducible: negative entry");
    if (x.rows == 0) return true;
    Digraph g = digraph_of(x);
    auto fwd = detail::reachable(g, 0, false);
    auto bwd = detail::reachable(g, 0, true);
    for (int v = 0; v < g.n; ++v)
        if (!fwd[v] || !bwd[v]) return false;
    return true;
}

/// Partition of [n] into connected components of the nonzero pattern of a
/// symmetric matrix. Diagonal minors are irreducible, off-diagonal blocks null.
template <class T>
Partition induced_partition(const Matrix<T>& z) {
    if (!z.square() || !z.is_symmetric()) throw Error("induced_partition: asymmetric input");
    if (!z.is_nonnegative()) throw Error("induced_partition: negative entry");
    UnionFind uf(z.rows);
    for (int i = 0; i < z.rows; ++i)
        for (int j = i + 1; j < z.rows; ++j)
            if (!is_zero(z(i, j))) uf.unite(i, j);
    return uf.to_partition();
}

template <class T>
void require_good_input(const Matrix<T>& z, const char* who) {
    if (!z.square() || !z.is_symmetric()) throw Error(std::string(who) + ": asymmetric input");
    if (!z.is_nonnegative()) throw Error(std::string(who) + ": negative entry");
    if (!z.has_strictly_positive_diagonal()) throw Error(std::string(who) + ": zero diagonal entry");
}

/// Good symmetric: every induced diagonal block has nonzero entries throughout.
template <class T>
bool is_good_symmetric(const Matrix<T>& z) {
    require_good_input(z, "is_good_symmetric");
    Partition p = induced_partition(z);
    for (const auto& block : p.blocks)
        for (int d : block)
            for (int d2 : block)
                if (is_zero(z(d, d2))) return false;
    return true;
}

inline long least_power_of_two_at_least(long x) {
    long p = 1;
    while (p < x) p <<= 1;
    return p;
}

/// z^l for the least power of two l >= n-1; good symmetric for valid input.
template <class T>
Matrix<T> good_power(const Matrix<T>& z) {
    require_good_input(z, "good_power");
    long l = least_power_of_two_at_least(std::max<long>(1, z.rows - 1));
    return z.pow(l);
}

/// A matrix X >= 0 without null lines is good if XX^t and X^tX are good symmetric.
template <class T>
bool is_good(const Matrix<T>& x) {
    if (x.has_null_line()) throw Error("is_good: null row or column");
    return is_good_symmetric(x * x.transpose()) && is_good_symmetric(x.transpose() * x);
}

/// Partitions of [rows] and [cols] induced by XX^t and X^tX, with the column
/// partition reindexed so block i relates to block i; cross blocks vanish.
template <class T>
struct XRelatedPartitions {
    Partition row; // on [rows], induced by XX^t
    Partition col; // on [cols], induced by X^tX, indices matched to row
};

template <class T>
XRelatedPartitions<T> x_related_partitions(const Matrix<T>& x) {
    if (!x.is_nonnegative()) throw Error("x_related_partitions: negative entry");
    if (x.has_null_line()) throw Error("x_related_partitions: null row or column");
    Partition row = induced_partition(x * x.transpose());
    Partition colRaw = induced_partition(x.transpose() * x);
    if (row.size() != colRaw.size())
        throw Error("x_related_partitions: block count mismatch"); // cannot happen
    // match indices through the nonzero pattern of X
    std::vector<int> match(row.size(), -1);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) {
            if (is_zero(x(i, j))) continue;
            int bi = row.block_of[i], bj = colRaw.block_of[j];
            if (match[bi] == -1) match[bi] = bj;
            else if (match[bi] != bj)
                throw Error("x_related_partitions: incoherent relation");
        }
    }
    std::vector<int> ids(x.cols, -1);
    std::vector<int> inv(colRaw.size(), -1);
    for (int b = 0; b < row.size(); ++b) {
        if (match[b] == -1 || inv[match[b]] != -1)
            throw Error("x_related_partitions: relation not bijective");
        inv[match[b]] = b;
    }
    for (int j = 0; j < x.cols; ++j) ids[j] = inv[colRaw.block_of[j]];
    XRelatedPartitions<T> rel;
    rel.row = std::move(row);
    rel.col = Partition::from_block_ids(ids);
    // X_{D_i D'_j} = 0 for i != j
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            if (!is_zero(x(i, j)) && rel.row.block_of[i] != rel.col.block_of[j])
                throw Error("x_related_partitions: nonzero cross block");
    return rel;
}

/// Block-size and characteristic-vector identities for doubly stochastic X.
struct StochasticRelatednessReport {
    XRelatedPartitions<Rat> partitions;
    bool sizes_equal = false;        // |D_i| = |D'_i|
    bool row_vectors_recovered = false; // d_i = X d'_i
    bool col_vectors_recovered = false; // d'_i = X^t d_i
    bool all_hold() const { return sizes_equal && row_vectors_recovered && col_vectors_recovered; }
};

inline StochasticRelatednessReport check_stochastic_relatedness(const RatMatrix& x) {
    if (!is_doubly_stochastic(x)) throw Error("check_stochastic_relatedness: not doubly stochastic");
    StochasticRelatednessReport rep;
    rep.partitions = x_related_partitions(x);
    const Partition& P = rep.partitions.row;
    const Partition& Q = rep.partitions.col;
    rep.sizes_equal = true;
    for (int i = 0; i < P.size(); ++i)
        if (P.blocks[i].size() != Q.blocks[i].size()) rep.sizes_equal = false;
    RatMatrix xt = x.transpose();
    rep.row_vectors_recovered = rep.col_vectors_recovered = true;
    for (int i = 0; i < P.size(); ++i) {
        auto di = P.characteristic_vector<Rat>(i);
        auto diPrime = Q.characteristic_vector<Rat>(i);
        if (mat_vec(x, diPrime) != di) rep.row_vectors_recovered = false;
        if (mat_vec(xt, di) != diPrime) rep.col_vectors_recovered = false;
    }
    return rep;
}

/// Stable partition check: row/column sums into every block are block-constant.
/// In boolean mode the sums are v-sums and the parameters are the iota values.
template <class T>
struct StabilityReport {
    bool stable = false;
    bool row_stable = false;
    bool col_stable = false;
    Matrix<T> row_params; // s_ij (iota_ij in boolean mode)
    Matrix<T> col_params; // t_ij
    bool bistable_checked = false; // boolean adjacency input only
    bool bi_stable = false;
};

template <class T>
StabilityReport<T> stability(const Matrix<T>& a, const Partition& part) {
    if (!a.square() || a.rows != part.n) throw Error("stability: partition/matrix size mismatch");
    int s = part.size();
    StabilityReport<T> rep;
    rep.row_params = Matrix<T>(s, s);
    rep.col_params = Matrix<T>(s, s);
    rep.row_stable = rep.col_stable = true;
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            bool first = true;
            T rowRef = semiring_zero<T>(), colRef = semiring_zero<T>();
            for (int d : part.blocks[i]) {
                T rowSum = semiring_zero<T>(), colSum = semiring_zero<T>();
                for (int d2 : part.blocks[j]) {
                    rowSum += a(d, d2);
                    colSum += a(d2, d);
                }
                if (first) {
                    rowRef = rowSum;
                    colRef = colSum;
                    first = false;
                } else {
                    if (rowSum != rowRef) rep.row_stable = false;
                    if (colSum != colRef) rep.col_stable = false;
                }
            }
            rep.row_params(i, j) = rowRef;
            rep.col_params(i, j) = colRef;
        }
    }
    rep.stable = rep.row_stable && rep.col_stable;
    return rep;
}

inline BoolMatrix boolean_complement_adjacency(const BoolMatrix& a) {
    BoolMatrix c(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            c(i, j) = Boolean(i != j && is_zero(a(i, j)));
    return c;
}

inline bool looks_like_adjacency(const BoolMatrix& a) {
    if (!a.square() || !a.is_symmetric()) return false;
    for (int i = 0; i < a.rows; ++i)
        if (!is_zero(a(i, i))) return false;
    return true;
}

inline StabilityReport<Boolean> stability_boolean(const BoolMatrix& a, const Partition& part) {
    StabilityReport<Boolean> rep = stability(a, part);
    if (looks_like_adjacency(a)) {
        rep.bistable_checked = true;
        auto comp = stability(boolean_complement_adjacency(a), part);
        rep.bi_stable = rep.stable && comp.stable;
    }
    return rep;
}

/// Rank of m by exact Gaussian elimination; m is consumed.
inline int rat_rank(RatMatrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (!is_zero(m(r, col))) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < m.cols; ++c) std::swap(m(pivot, c), m(rank, c));
        Rat inv = 1 / m(rank, col);
        for (int c = col; c < m.cols; ++c) m(rank, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || is_zero(m(r, col))) continue;
            Rat f = m(r, col);
            for (int c = col; c < m.cols; ++c) m(r, c) -= f * m(rank, c);
        }
        ++rank;
    }
    return rank;
}

/// Dimension of the eigenvalue-1 fixed space of a doubly stochastic matrix,
/// i.e. the solution space of (Z - E_n) v = 0.
inline int fixed_space_dimension(const RatMatrix& z) {
    if (!is_doubly_stochastic(z)) throw Error("fixed_space_dimension: not doubly stochastic");
    RatMatrix m = z;
    for (int i = 0; i < m.rows; ++i) m(i, i) -= 1;
    return z.rows - rat_rank(std::move(m));
}

/// Characteristic vectors of the partition induced by a symmetric boolean Z
/// with unit diagonal; each satisfies Z d_i = d_i in boolean arithmetic.
inline std::vector<std::vector<Boolean>> boolean_fixed_vectors(const BoolMatrix& z) {
    require_good_input(z, "boolean_fixed_vectors");
    Partition p = induced_partition(z);
    std::vector<std::vector<Boolean>> out;
    for (int i = 0; i < p.size(); ++i) {
        auto d = p.characteristic_vector<Boolean>(i);
        if (mat_vec(z, d) != d) throw Error("boolean_fixed_vectors: eigenvector equation failed");
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace isolab
