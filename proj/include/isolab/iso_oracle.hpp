#pragma once

#include "isolab/graph.hpp"

#include <algorithm>
#include <vector>

namespace isolab {

/// Exhaustive colour- and adjacency-preserving bijection search with pruning.
/// Ground-truth oracle, deliberately independent of the refinement engines.
/// Inputs above the size guard are rejected; tests that need the CFI instances
/// pass the guard explicitly.
inline bool brute_force_isomorphic(const Graph& g, const Graph& h, int size_guard = 10) {
    if (std::max(g.n, h.n) > size_guard)
        throw Error("brute_force_isomorphic: size guard exceeded");
    if (g.n != h.n) return false;
    if (g.edge_count() != h.edge_count()) return false;

    int n = g.n;
    if (n == 0) return true;

    auto key = [](const Graph& x, int v) { return std::pair<int, int>(x.colour(v), x.degree(v)); };
    std::vector<std::pair<int, int>> kg(n), kh(n);
    for (int v = 0; v < n; ++v) {
        kg[v] = key(g, v);
        kh[v] = key(h, v);
    }
    {
        auto sg = kg, sh = kh;
        std::sort(sg.begin(), sg.end());
        std::sort(sh.begin(), sh.end());
        if (sg != sh) return false;
    }

    std::vector<std::vector<int>> cand(n);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (kg[v] == kh[w]) cand[v].push_back(w);

    // place vertices with many already-placed neighbours first
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1, bestAnchored = -1;
        size_t bestCand = 0;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int anchored = 0;
            for (int u : order)
                if (g.edge(v, u)) ++anchored;
            if (best == -1 || anchored > bestAnchored ||
                (anchored == bestAnchored && cand[v].size() < bestCand)) {
                best = v;
                bestAnchored = anchored;
                bestCand = cand[v].size();
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }

    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    auto search = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        int v = order[depth];
        for (int w : cand[v]) {
            if (used[w]) continue;
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d) {
                int u = order[d];
                if (g.edge(v, u) != h.edge(w, image[u])) ok = false;
            }
            if (!ok) continue;
            image[v] = w;
            used[w] = 1;
            if (self(self, depth + 1)) return true;
            used[w] = 0;
            image[v] = -1;
        }
        return false;
    };
    return search(search, 0);
}

} // namespace isolab
