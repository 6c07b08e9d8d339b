#pragma once

#include "isolab/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isolab {

/// A set of at most k pairs over [m] x [n], canonically sorted. Augmentation
/// is set insertion, so p^ab with (a,b) already in p equals p.
struct PartialMap {
    std::vector<std::pair<int, int>> pairs;

    PartialMap() = default;

    static PartialMap of(std::vector<std::pair<int, int>> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        PartialMap p;
        p.pairs = std::move(v);
        return p;
    }

    int size() const { return static_cast<int>(pairs.size()); }
    bool empty() const { return pairs.empty(); }

    PartialMap augmented(int a, int b) const {
        std::pair<int, int> pr(a, b);
        PartialMap q;
        q.pairs.reserve(pairs.size() + 1);
        bool placed = false;
        for (const auto& existing : pairs) {
            if (!placed && pr < existing) {
                q.pairs.push_back(pr);
                placed = true;
            }
            if (existing == pr) placed = true;
            q.pairs.push_back(existing);
        }
        if (!placed) q.pairs.push_back(pr);
        return q;
    }

    PartialMap without(int a, int b) const {
        PartialMap q;
        for (const auto& pr : pairs)
            if (pr != std::pair<int, int>(a, b)) q.pairs.push_back(pr);
        return q;
    }

    std::vector<int> firsts() const {
        std::vector<int> v;
        for (auto [a, b] : pairs) v.push_back(a);
        return v;
    }
    std::vector<int> seconds() const {
        std::vector<int> v;
        for (auto [a, b] : pairs) v.push_back(b);
        return v;
    }

    bool is_local_bijection() const {
        for (size_t i = 0; i < pairs.size(); ++i)
            for (size_t j = i + 1; j < pairs.size(); ++j)
                if (pairs[i].first == pairs[j].first || pairs[i].second == pairs[j].second)
                    return false;
        return true;
    }

    /// Injective, adjacency- and non-adjacency-preserving, colour-preserving.
    bool is_local_isomorphism(const Graph& gA, const Graph& gB) const {
        for (size_t i = 0; i < pairs.size(); ++i) {
            auto [a, b] = pairs[i];
            if (gA.colour(a) != gB.colour(b)) return false;
            for (size_t j = i + 1; j < pairs.size(); ++j) {
                auto [c, d] = pairs[j];
                if (a == c || b == d) return false;
                if (gA.edge(a, c) != gB.edge(b, d)) return false;
            }
        }
        return true;
    }

    /// "a1:b1;a2:b2" with 1-based vertices, "-" for the empty map.
    std::string key() const {
        if (pairs.empty()) return "-";
        std::string s;
        for (size_t i = 0; i < pairs.size(); ++i) {
            if (i) s += ';';
            s += std::to_string(pairs[i].first + 1) + ":" + std::to_string(pairs[i].second + 1);
        }
        return s;
    }

    static PartialMap parse_key(const std::string& key) {
        PartialMap p;
        if (key == "-") return p;
        std::vector<std::pair<int, int>> v;
        size_t pos = 0;
        while (pos < key.size()) {
            size_t semi = key.find(';', pos);
            if (semi == std::string::npos) semi = key.size();
            std::string item = key.substr(pos, semi - pos);
            size_t colon = item.find(':');
            if (colon == std::string::npos) throw Error("bad variable key: " + key);
            int a = std::stoi(item.substr(0, colon));
            int b = std::stoi(item.substr(colon + 1));
            if (a < 1 || b < 1) throw Error("bad variable key: " + key);
            v.emplace_back(a - 1, b - 1);
            pos = semi + 1;
        }
        return of(std::move(v));
    }

    friend bool operator==(const PartialMap& x, const PartialMap& y) { return x.pairs == y.pairs; }
    friend bool operator!=(const PartialMap& x, const PartialMap& y) { return !(x == y); }
    friend bool operator<(const PartialMap& x, const PartialMap& y) {
        if (x.pairs.size() != y.pairs.size()) return x.pairs.size() < y.pairs.size();
        return x.pairs < y.pairs;
    }
};

struct PartialMapHash {
    size_t operator()(const PartialMap& p) const {
        uint64_t h = 1469598103934665603ull;
        for (auto [a, b] : p.pairs) {
            h ^= (static_cast<uint64_t>(a) << 21) ^ static_cast<uint64_t>(b) ^ 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

} // namespace isolab
