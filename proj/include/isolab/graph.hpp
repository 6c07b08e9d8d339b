#pragma once

#include "isolab/matrix.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace isolab {

/// Simple undirected loop-free graph with optional vertex colours.
/// Vertices are 1-based in files and messages, 0-based internally.
struct Graph {
    int n = 0;
    std::vector<char> adj; // n*n symmetric, null diagonal
    std::vector<int> colours; // empty when uncoloured, else one id per vertex

    Graph() = default;
    explicit Graph(int vertices) : n(vertices), adj(static_cast<size_t>(vertices) * vertices, 0) {}

    bool edge(int u, int v) const { return adj[static_cast<size_t>(u) * n + v] != 0; }

    void add_edge(int u, int v) {
        if (u == v) throw Error("loop edge");
        adj[static_cast<size_t>(u) * n + v] = 1;
        adj[static_cast<size_t>(v) * n + u] = 1;
    }

    bool coloured() const { return !colours.empty(); }

    int colour(int v) const { return coloured() ? colours[v] : 0; }

    int edge_count() const {
        int m = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (edge(u, v)) ++m;
        return m;
    }

    int degree(int v) const {
        int d = 0;
        for (int u = 0; u < n; ++u)
            if (edge(v, u)) ++d;
        return d;
    }

    template <class T = Boolean>
    Matrix<T> adjacency() const {
        Matrix<T> a(n, n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (edge(u, v)) a(u, v) = semiring_one<T>();
        return a;
    }

    Graph relabelled(const std::vector<int>& perm) const {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (edge(u, v)) g.add_edge(perm[u], perm[v]);
        if (coloured()) {
            g.colours.assign(n, 0);
            for (int v = 0; v < n; ++v) g.colours[perm[v]] = colours[v];
        }
        return g;
    }
};

/// A^c: edges become non-edges and vice versa, diagonal stays null.
inline Graph complement(const Graph& g) {
    Graph c(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.edge(u, v)) c.add_edge(u, v);
    c.colours = g.colours;
    return c;
}

inline Graph disjoint_union(const Graph& g, const Graph& h) {
    Graph u(g.n + h.n);
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (g.edge(a, b)) u.add_edge(a, b);
    for (int a = 0; a < h.n; ++a)
        for (int b = a + 1; b < h.n; ++b)
            if (h.edge(a, b)) u.add_edge(g.n + a, g.n + b);
    if (g.coloured() || h.coloured()) {
        u.colours.assign(u.n, 0);
        for (int v = 0; v < g.n; ++v) u.colours[v] = g.colour(v);
        for (int v = 0; v < h.n; ++v) u.colours[g.n + v] = h.colour(v);
    }
    return u;
}

/// Colour elimination: every vertex of colour i gains a fresh pendant path of
/// length i+2; distinct colours get distinct lengths, adjacency is unchanged.
inline Graph decorate_with_paths(const Graph& g) {
    if (!g.coloured()) throw Error("decorate_with_paths: graph has no colours");
    long extra = 0;
    for (int v = 0; v < g.n; ++v) extra += g.colour(v) + 2;
    Graph d(static_cast<int>(g.n + extra));
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.edge(u, v)) d.add_edge(u, v);
    int next = g.n;
    for (int v = 0; v < g.n; ++v) {
        int len = g.colour(v) + 2;
        int prev = v;
        for (int step = 0; step < len; ++step) {
            d.add_edge(prev, next);
            prev = next++;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Graph file format:
//   p <n> <m>
//   c <v> <colour>   (optional)
//   e <u> <v>        (m lines, 1-based, u != v, no duplicates)
// '#' lines are comments.

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw Error("graph parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    bool have_header = false;
    int n = 0;
    long m = 0, edges_seen = 0;
    Graph g;
    std::vector<char> has_colour;
    bool any_colour = false;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "p") {
            if (have_header) fail("duplicate header");
            if (!(ls >> n >> m) || n < 0 || m < 0) fail("bad header");
            g = Graph(n);
            has_colour.assign(n, 0);
            have_header = true;
        } else if (kind == "c") {
            if (!have_header) fail("colour line before header");
            int v, col;
            if (!(ls >> v >> col)) fail("bad colour line");
            if (v < 1 || v > n) fail("vertex index out of range");
            if (col < 0) fail("negative colour id");
            if (has_colour[v - 1]) fail("duplicate colour for vertex " + std::to_string(v));
            if (!any_colour) {
                g.colours.assign(n, 0);
                any_colour = true;
            }
            g.colours[v - 1] = col;
            has_colour[v - 1] = 1;
        } else if (kind == "e") {
            if (!have_header) fail("edge line before header");
            int u, v;
            if (!(ls >> u >> v)) fail("bad edge line");
            if (u < 1 || u > n || v < 1 || v > n) fail("vertex index out of range");
            if (u == v) fail("loop edge");
            if (g.edge(u - 1, v - 1)) fail("duplicate edge");
            g.add_edge(u - 1, v - 1);
            ++edges_seen;
        } else {
            fail("unknown line kind '" + kind + "'");
        }
        std::string rest;
        if (ls >> rest) fail("trailing tokens");
    }
    if (!have_header) {
        lineno = 0;
        fail("missing header");
    }
    if (edges_seen != m) {
        lineno = 0;
        fail("edge count mismatch: header says " + std::to_string(m) + ", found " +
             std::to_string(edges_seen));
    }
    return g;
}

inline std::string render_graph(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.n << " " << g.edge_count() << "\n";
    if (g.coloured())
        for (int v = 0; v < g.n; ++v) out << "c " << (v + 1) << " " << g.colours[v] << "\n";
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.edge(u, v)) out << "e " << (u + 1) << " " << (v + 1) << "\n";
    return out.str();
}

// small builders used all over the tests and the CLI

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

} // namespace isolab
