#pragma once

#include "isolab/graph.hpp"

namespace isolab {

/// Degree-d gadget: ports {1,1',..,d,d'} and one inner node per odd-size
/// (even-size for the dual) subset of [d]; inner s joins port i when i is in s
/// and port i' otherwise. Colours separate the inner nodes and each port pair.
///
/// Vertex layout: ports 1,1',2,2',..., then inner subsets in ascending bitmask
/// order. Port pair i carries colour i-1, inner nodes colour d.
inline Graph gadget(int d, bool even_parity = false) {
    if (d < 2 || d > 6) throw Error("gadget: degree out of range (2..6)");
    std::vector<int> inners;
    for (int s = 0; s < (1 << d); ++s)
        if ((__builtin_popcount(static_cast<unsigned>(s)) % 2 == 0) == even_parity)
            inners.push_back(s);
    Graph g(2 * d + (1 << (d - 1)));
    g.colours.assign(g.n, 0);
    for (int i = 1; i <= d; ++i) {
        g.colours[2 * (i - 1)] = i - 1;
        g.colours[2 * (i - 1) + 1] = i - 1;
    }
    for (size_t idx = 0; idx < inners.size(); ++idx) {
        int v = 2 * d + static_cast<int>(idx);
        g.colours[v] = d;
        int s = inners[idx];
        for (int i = 1; i <= d; ++i)
            g.add_edge(v, ((s >> (i - 1)) & 1) ? 2 * (i - 1) : 2 * (i - 1) + 1);
    }
    return g;
}

/// Straight and twisted companions of the t-clique: one degree-(t-1) gadget
/// per region, bridges between matching ports, and in the twisted graph the
/// last region built from the dual gadget.
struct CfiPair {
    int t = 0;
    Graph straight, twisted;
    std::vector<int> region; // vertex -> region id 1..t, same layout in both
    int marked_region = 0;   // 0 when unmarked

    int gadget_order() const { return 2 * (t - 1) + (1 << (t - 2)); }
    int region_offset(int r) const { return (r - 1) * gadget_order(); }
};

/// Port index of region v facing region w: the rank of w among [t] \ {v}.
inline int cfi_port_rank(int v, int w) { return w < v ? w : w - 1; }

inline CfiPair cfi_pair(int t) {
    if (t < 3 || t > 5) throw Error("cfi_pair: t out of range (3..5)");
    const int d = t - 1;
    CfiPair pair;
    pair.t = t;

    auto assemble = [&](bool twisted) {
        Graph whole(t * (2 * d + (1 << (d - 1))));
        whole.colours.assign(whole.n, 0);
        for (int r = 1; r <= t; ++r) {
            Graph part = gadget(d, twisted && r == t);
            int off = (r - 1) * part.n;
            int colourOff = (r - 1) * (d + 1);
            for (int v = 0; v < part.n; ++v) whole.colours[off + v] = colourOff + part.colours[v];
            for (int u = 0; u < part.n; ++u)
                for (int v = u + 1; v < part.n; ++v)
                    if (part.edge(u, v)) whole.add_edge(off + u, off + v);
        }
        // bridges: positive to positive and negative to negative ports
        int order = 2 * d + (1 << (d - 1));
        for (int v = 1; v <= t; ++v)
            for (int w = v + 1; w <= t; ++w) {
                int pv = (v - 1) * order + 2 * (cfi_port_rank(v, w) - 1);
                int pw = (w - 1) * order + 2 * (cfi_port_rank(w, v) - 1);
                whole.add_edge(pv, pw);
                whole.add_edge(pv + 1, pw + 1);
            }
        return whole;
    };

    pair.straight = assemble(false);
    pair.twisted = assemble(true);
    pair.region.assign(pair.straight.n, 0);
    for (int v = 0; v < pair.straight.n; ++v) pair.region[v] = v / pair.gadget_order() + 1;
    return pair;
}

/// Marks the full-subset inner node of the given region with a fresh colour in
/// both graphs. The node must exist on both sides, which rules out the
/// twisted region.
inline CfiPair mark_inner(CfiPair pair, int region) {
    if (region < 1 || region > pair.t) throw Error("mark_inner: no such region");
    const int d = pair.t - 1;
    const int full = (1 << d) - 1;

    auto inner_index = [&](bool even_parity) {
        // rank of the full set among this parity's subsets in bitmask order
        int rank = 0;
        for (int s = 0; s < full; ++s)
            if ((__builtin_popcount(static_cast<unsigned>(s)) % 2 == 0) == even_parity) ++rank;
        bool present = (d % 2 == 0) == even_parity;
        return present ? rank : -1;
    };

    int inStraight = inner_index(false);
    int inTwisted = inner_index(region == pair.t);
    if (inStraight < 0 || inTwisted < 0)
        throw Error("mark_inner: full-set inner node absent on one side");

    int markColour = pair.t * d + pair.t + (region - 1); // beyond t*(d+1) base colours
    int base = pair.region_offset(region) + 2 * d;
    pair.straight.colours[base + inStraight] = markColour;
    pair.twisted.colours[base + inTwisted] = markColour;
    pair.marked_region = region;
    return pair;
}

} // namespace isolab
