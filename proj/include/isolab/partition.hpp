#pragma once

#include "isolab/matrix.hpp"

#include <algorithm>
#include <vector>

namespace isolab {

/// Indexed partition of {0,..,n-1} into nonempty disjoint blocks covering the ground set.
struct Partition {
    int n = 0;
    std::vector<int> block_of;            // element -> block index
    std::vector<std::vector<int>> blocks; // block index -> sorted elements

    Partition() = default;

    static Partition from_block_ids(const std::vector<int>& ids) {
        Partition p;
        p.n = static_cast<int>(ids.size());
        p.block_of = ids;
        int c = 0;
        for (int b : ids) c = std::max(c, b + 1);
        p.blocks.assign(c, {});
        for (int v = 0; v < p.n; ++v) {
            if (ids[v] < 0 || ids[v] >= c) throw Error("partition: bad block id");
            p.blocks[ids[v]].push_back(v);
        }
        for (auto& b : p.blocks)
            if (b.empty()) throw Error("partition: empty block");
        return p;
    }

    /// Blocks renumbered by smallest element, so equal partitions compare equal.
    static Partition from_labels(const std::vector<int>& labels) {
        int n = static_cast<int>(labels.size());
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::vector<int> ids(n, -1);
        int next = 0;
        for (int v = 0; v < n; ++v) {
            if (ids[v] >= 0) continue;
            for (int w = v; w < n; ++w)
                if (labels[w] == labels[v] && ids[w] < 0) ids[w] = next;
            ++next;
        }
        return from_block_ids(ids);
    }

    int size() const { return static_cast<int>(blocks.size()); }

    template <class T>
    std::vector<T> characteristic_vector(int i) const {
        std::vector<T> d(n, semiring_zero<T>());
        for (int v : blocks[i]) d[v] = semiring_one<T>();
        return d;
    }

    bool is_discrete() const { return size() == n; }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n == b.n && a.block_of == b.block_of;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

    /// Same blocks regardless of indexing.
    bool same_blocks(const Partition& o) const {
        if (n != o.n || size() != o.size()) return false;
        std::vector<int> map(size(), -1);
        for (int v = 0; v < n; ++v) {
            int i = block_of[v], j = o.block_of[v];
            if (map[i] == -1) map[i] = j;
            if (map[i] != j) return false;
        }
        return true;
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    Partition to_partition() {
        std::vector<int> root(parent.size());
        for (size_t i = 0; i < parent.size(); ++i) root[i] = find(static_cast<int>(i));
        return Partition::from_labels(root);
    }
};

} // namespace isolab
