#pragma once

#include "isolab/graph.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

namespace isolab {

struct GameVerdict {
    bool equivalent = false;
    long long positions = 0;                 // local-iso positions enumerated
    long long removed = 0;                   // positions removed by the fixpoint
    std::vector<std::pair<int, int>> witness; // first non-matchable position (0-based)
};

/// Greatest-fixpoint solver for the plain k-pebble game and its weak variant.
///
/// Positions are the local isomorphisms of size <= k (strong) or <= k-1 (weak),
/// stored as canonically sorted pair sets. Starting from all positions alive,
/// positions violating back-and-forth are removed with worklist propagation:
/// support counters track, per extendable position and per element, how many
/// alive successors remain.
class PebbleGame {
public:
    PebbleGame(int k, const Graph& gA, const Graph& gB, bool weak,
               long long budget = 5'000'000)
        : k_(k), weak_(weak), gA_(gA), gB_(gB), nA_(gA.n), nB_(gB.n) {
        if (k < 2) throw Error("pebble game: k must be >= 2");
        maxSize_ = weak ? k - 1 : k;
        enumerate_positions(budget);
        build_children();
        init_counters();
        initial_kills();
        drain();
    }

    bool equivalent() const { return alive_[0]; }

    GameVerdict verdict() const {
        GameVerdict v;
        v.equivalent = alive_[0];
        v.positions = static_cast<long long>(pos_.size());
        v.removed = removed_;
        if (!v.equivalent && firstKilled_ >= 0)
            for (int32_t code : pos_[firstKilled_]) v.witness.push_back(decode(code));
        return v;
    }

    /// Start-position query: g,abar ~ h,bbar for a given position.
    bool position_alive(std::vector<std::pair<int, int>> pairs) const {
        std::vector<int32_t> codes;
        for (auto [a, b] : pairs) {
            if (a < 0 || a >= nA_ || b < 0 || b >= nB_) return false;
            codes.push_back(encode(a, b));
        }
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
        if (static_cast<int>(codes.size()) > maxSize_) return false;
        int32_t id = find(codes);
        return id >= 0 && alive_[id];
    }

    /// All surviving positions (the boolean canonical assignment's support).
    void for_each_alive(const std::function<void(const std::vector<int32_t>&)>& fn) const {
        for (size_t i = 0; i < pos_.size(); ++i)
            if (alive_[i]) fn(pos_[i]);
    }

    std::pair<int, int> decode(int32_t code) const { return {code / nB_, code % nB_}; }

private:
    int k_;
    bool weak_;
    const Graph& gA_;
    const Graph& gB_;
    int nA_, nB_;
    int maxSize_;

    std::vector<std::vector<int32_t>> pos_; // sorted pair codes, level order
    std::vector<char> alive_;
    std::vector<std::vector<int32_t>> children_;
    std::unordered_map<uint64_t, std::vector<int32_t>> index_;
    // strong: successor counts per extendable position; weak: growth layer
    std::vector<std::vector<uint16_t>> ext_;
    // weak announce layer: per size-(k-1) position, per removable pair, per element
    std::vector<std::vector<uint16_t>> announce_;
    std::deque<int32_t> queue_;
    long long removed_ = 0;
    int32_t firstKilled_ = -1;

    int32_t encode(int a, int b) const { return static_cast<int32_t>(a) * nB_ + b; }

    static uint64_t hash_codes(const std::vector<int32_t>& codes) {
        uint64_t h = 1469598103934665603ull;
        for (int32_t c : codes) {
            h ^= static_cast<uint32_t>(c) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }

    int32_t find(const std::vector<int32_t>& codes) const {
        auto it = index_.find(hash_codes(codes));
        if (it == index_.end()) return -1;
        for (int32_t id : it->second)
            if (pos_[id] == codes) return id;
        return -1;
    }

    bool liso_extension(const std::vector<int32_t>& p, int a, int b) const {
        if (gA_.colour(a) != gB_.colour(b)) return false;
        for (int32_t code : p) {
            auto [c, d] = decode(code);
            if (c == a || d == b) return false;
            if (gA_.edge(a, c) != gB_.edge(b, d)) return false;
        }
        return true;
    }

    void add_position(std::vector<int32_t> codes) {
        int32_t id = static_cast<int32_t>(pos_.size());
        index_[hash_codes(codes)].push_back(id);
        pos_.push_back(std::move(codes));
    }

    void enumerate_positions(long long budget) {
        if (nA_ > 0 && nB_ > 65535) throw Error("pebble game: graph too large");
        add_position({});
        size_t levelBegin = 0, levelEnd = 1;
        for (int size = 1; size <= maxSize_; ++size) {
            for (size_t qi = levelBegin; qi < levelEnd; ++qi) {
                const auto base = pos_[qi]; // copy: pos_ reallocates
                int32_t from = base.empty() ? 0 : base.back() + 1;
                for (int32_t code = from; code < static_cast<int32_t>(nA_) * nB_; ++code) {
                    auto [a, b] = decode(code);
                    if (!liso_extension(base, a, b)) continue;
                    auto ext = base;
                    ext.push_back(code);
                    add_position(std::move(ext));
                    if (static_cast<long long>(pos_.size()) > budget)
                        throw BudgetExceeded("pebble game position budget exceeded");
                }
            }
            levelBegin = levelEnd;
            levelEnd = pos_.size();
        }
        alive_.assign(pos_.size(), 1);
    }

    void build_children() {
        children_.assign(pos_.size(), {});
        std::vector<int32_t> q;
        for (size_t s = 0; s < pos_.size(); ++s) {
            const auto& ps = pos_[s];
            for (size_t drop = 0; drop < ps.size(); ++drop) {
                q.clear();
                for (size_t i = 0; i < ps.size(); ++i)
                    if (i != drop) q.push_back(ps[i]);
                int32_t qid = find(q);
                children_[qid].push_back(static_cast<int32_t>(s));
            }
        }
    }

    // the pair of child not present in parent (child = parent + one pair)
    int32_t added_pair(const std::vector<int32_t>& child, const std::vector<int32_t>& parent) const {
        size_t i = 0;
        for (; i < parent.size(); ++i)
            if (child[i] != parent[i]) return child[i];
        return child[i];
    }

    void init_counters() {
        ext_.assign(pos_.size(), {});
        for (size_t q = 0; q < pos_.size(); ++q)
            if (static_cast<int>(pos_[q].size()) < maxSize_) ext_[q].assign(nA_ + nB_, 0);
        std::vector<int32_t> q;
        for (size_t s = 0; s < pos_.size(); ++s) {
            const auto& ps = pos_[s];
            for (size_t drop = 0; drop < ps.size(); ++drop) {
                q.clear();
                for (size_t i = 0; i < ps.size(); ++i)
                    if (i != drop) q.push_back(ps[i]);
                int32_t qid = find(q);
                auto [a, b] = decode(ps[drop]);
                ++ext_[qid][a];
                ++ext_[qid][nA_ + b];
            }
        }
        if (!weak_) return;
        // announce layer: position p = q ^ cd of size k-1, removable pair cd,
        // successor q ^ a'b' with p ^ a'b' a local isomorphism
        announce_.assign(pos_.size(), {});
        for (size_t p = 0; p < pos_.size(); ++p)
            if (static_cast<int>(pos_[p].size()) == maxSize_ && maxSize_ >= 1)
                announce_[p].assign(pos_[p].size() * (nA_ + nB_), 0);
        for (size_t qi = 0; qi < pos_.size(); ++qi) {
            if (static_cast<int>(pos_[qi].size()) != maxSize_ - 1) continue;
            const auto& kids = children_[qi];
            for (int32_t succ : kids) {
                int32_t addS = added_pair(pos_[succ], pos_[qi]);
                auto [a2, b2] = decode(addS);
                for (int32_t child : kids) {
                    if (child == succ) continue;
                    int32_t addC = added_pair(pos_[child], pos_[qi]);
                    auto [c, d] = decode(addC);
                    // p^{a'b'} local iso given both extensions are; shared
                    // endpoints on one side only break injectivity
                    if (c == a2 || d == b2) continue;
                    if (gA_.edge(c, a2) != gB_.edge(d, b2)) continue;
                    size_t pairIdx = 0;
                    const auto& pc = pos_[child];
                    while (pc[pairIdx] != addC) ++pairIdx;
                    auto& slots = announce_[child];
                    ++slots[pairIdx * (nA_ + nB_) + a2];
                    ++slots[pairIdx * (nA_ + nB_) + nA_ + b2];
                }
            }
        }
    }

    bool in_dom(const std::vector<int32_t>& p, int a) const {
        for (int32_t code : p)
            if (code / nB_ == a) return true;
        return false;
    }
    bool in_rng(const std::vector<int32_t>& p, int b) const {
        for (int32_t code : p)
            if (code % nB_ == b) return true;
        return false;
    }

    void kill(int32_t id) {
        if (!alive_[id]) return;
        alive_[id] = 0;
        if (firstKilled_ < 0) firstKilled_ = id;
        ++removed_;
        queue_.push_back(id);
    }

    void initial_kills() {
        for (size_t q = 0; q < pos_.size(); ++q) {
            if (!ext_[q].empty()) {
                for (int a = 0; a < nA_; ++a)
                    if (ext_[q][a] == 0 && !in_dom(pos_[q], a)) {
                        kill(static_cast<int32_t>(q));
                        break;
                    }
                if (alive_[q])
                    for (int b = 0; b < nB_; ++b)
                        if (ext_[q][nA_ + b] == 0 && !in_rng(pos_[q], b)) {
                            kill(static_cast<int32_t>(q));
                            break;
                        }
            }
            if (weak_ && !announce_[q].empty() && alive_[q]) {
                const auto& p = pos_[q];
                for (size_t pi = 0; pi < p.size() && alive_[q]; ++pi) {
                    for (int a = 0; a < nA_; ++a)
                        if (announce_[q][pi * (nA_ + nB_) + a] == 0 && !in_dom(p, a)) {
                            kill(static_cast<int32_t>(q));
                            break;
                        }
                    if (!alive_[q]) break;
                    for (int b = 0; b < nB_; ++b)
                        if (announce_[q][pi * (nA_ + nB_) + nA_ + b] == 0 && !in_rng(p, b)) {
                            kill(static_cast<int32_t>(q));
                            break;
                        }
                }
            }
        }
    }

    void drain() {
        std::vector<int32_t> q;
        while (!queue_.empty()) {
            int32_t s = queue_.front();
            queue_.pop_front();
            // A child reaches its parent by placing onto a pebbled element, so
            // the parent must stay alive. In the strong game every child has
            // such a move; in the weak game only the announce layer does, and
            // only when the remainder keeps a pebbled element.
            int ssize = static_cast<int>(pos_[s].size());
            bool cascade = weak_ ? (ssize == maxSize_ - 1 && ssize >= 1) : true;
            if (cascade)
                for (int32_t child : children_[s]) kill(child);
            const auto& ps = pos_[s];
            for (size_t drop = 0; drop < ps.size(); ++drop) {
                q.clear();
                for (size_t i = 0; i < ps.size(); ++i)
                    if (i != drop) q.push_back(ps[i]);
                int32_t qid = find(q);
                auto [a, b] = decode(ps[drop]);
                if (alive_[qid] && !ext_[qid].empty()) {
                    if (--ext_[qid][a] == 0) kill(qid);
                    if (alive_[qid] && --ext_[qid][nA_ + b] == 0) kill(qid);
                }
                if (weak_ && static_cast<int>(ps.size()) == maxSize_) {
                    // s = q ^ a'b' was a successor for announce moves of q's children
                    for (int32_t child : children_[qid]) {
                        if (child == s || !alive_[child]) continue;
                        int32_t addC = added_pair(pos_[child], q);
                        auto [c, d] = decode(addC);
                        if (c == a || d == b) continue;
                        if (gA_.edge(c, a) != gB_.edge(d, b)) continue;
                        size_t pairIdx = 0;
                        const auto& pc = pos_[child];
                        while (pc[pairIdx] != addC) ++pairIdx;
                        auto& slots = announce_[child];
                        if (--slots[pairIdx * (nA_ + nB_) + a] == 0) kill(child);
                        if (alive_[child] && --slots[pairIdx * (nA_ + nB_) + nA_ + b] == 0)
                            kill(child);
                    }
                }
            }
        }
    }
};

inline GameVerdict lk(int k, const Graph& gA, const Graph& gB, long long budget = 5'000'000) {
    return PebbleGame(k, gA, gB, /*weak=*/false, budget).verdict();
}

inline GameVerdict weak_lk(int k, const Graph& gA, const Graph& gB,
                           long long budget = 5'000'000) {
    return PebbleGame(k, gA, gB, /*weak=*/true, budget).verdict();
}

} // namespace isolab
