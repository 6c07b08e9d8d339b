#pragma once

#include "isolab/graph.hpp"
#include "isolab/matrix_analysis.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace isolab {

struct Verdict {
    bool equivalent = false;
    int rounds = 0;
    int32_t witness_colour = -1; // a stable colour with unequal realisation counts
};

/// Joint stable colouring of the r-tuples of two structures. Colour ids are
/// shared across structures and canonical (assigned by sorted signatures), so
/// cross-structure equality of ids is meaningful.
struct TupleColouring {
    int arity = 1;
    int nA = 0, nB = 0;
    long long tuplesA = 0, tuplesB = 0;
    std::vector<int32_t> colour; // A tuples first, then B tuples
    int32_t colour_count = 0;
    int rounds = 0;
    std::vector<long long> countA, countB; // realisations per colour

    long long index_of(std::span<const int> t, int n) const {
        long long idx = 0, p = 1;
        for (int i = 0; i < arity; ++i) {
            idx += t[i] * p;
            p *= n;
        }
        return idx;
    }

    /// Colour of an r-tuple with r <= arity; shorter tuples are padded by
    /// repeating the last component.
    int32_t colour_of(bool inB, std::span<const int> t) const {
        if (t.empty() || static_cast<int>(t.size()) > arity)
            throw Error("TupleColouring: bad tuple length");
        std::vector<int> padded(t.begin(), t.end());
        while (static_cast<int>(padded.size()) < arity) padded.push_back(padded.back());
        long long idx = index_of(padded, inB ? nB : nA);
        return colour[static_cast<size_t>(inB ? tuplesA + idx : idx)];
    }

    long long realisations(bool inB, int32_t c) const {
        const auto& cnt = inB ? countB : countA;
        return c >= 0 && c < colour_count ? cnt[c] : 0;
    }
};

namespace detail {

/// Assigns dense ids to signatures: hash for bucketing, full comparison on
/// collision, final ids ranked by lexicographic signature order.
class SigInterner {
public:
    void clear() {
        arena_.clear();
        reps_.clear();
        buckets_.clear();
    }

    int32_t add(const int64_t* p, size_t len) {
        uint64_t h = 1469598103934665603ull;
        for (size_t i = 0; i < len; ++i) {
            uint64_t x = static_cast<uint64_t>(p[i]);
            for (int b = 0; b < 8; ++b) {
                h ^= (x >> (8 * b)) & 0xff;
                h *= 1099511628211ull;
            }
        }
        auto& bucket = buckets_[h];
        for (int32_t id : bucket) {
            auto [off, rlen] = reps_[id];
            if (rlen == len && std::equal(p, p + len, arena_.begin() + off)) return id;
        }
        int32_t id = static_cast<int32_t>(reps_.size());
        reps_.emplace_back(arena_.size(), len);
        arena_.insert(arena_.end(), p, p + len);
        bucket.push_back(id);
        return id;
    }

    int32_t classes() const { return static_cast<int32_t>(reps_.size()); }

    /// rank[id] = position of id's signature in lexicographic order
    std::vector<int32_t> canonical_ranks() const {
        std::vector<int32_t> order(reps_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
        std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
            auto [oa, la] = reps_[a];
            auto [ob, lb] = reps_[b];
            return std::lexicographical_compare(arena_.begin() + oa, arena_.begin() + oa + la,
                                                arena_.begin() + ob, arena_.begin() + ob + lb);
        });
        std::vector<int32_t> rank(reps_.size());
        for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int32_t>(i);
        return rank;
    }

private:
    std::vector<int64_t> arena_;
    std::vector<std::pair<size_t, size_t>> reps_;
    std::unordered_map<uint64_t, std::vector<int32_t>> buckets_;
};

inline long long checked_pow(long long base, int exp, long long cap) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

} // namespace detail

enum class RefineKind { ColourRefinement, Wl, WeakWl };

struct RefineOutcome {
    Verdict verdict;
    TupleColouring colouring;
};

constexpr long long kDefaultEngineBudget = 5'000'000;

/// Shared refinement loop for colour refinement (arity 1, neighbour multisets),
/// k-WL (arity k, j-neighbour multisets) and weak k-WL (arity k-1, multisets of
/// (replaced-tuple colour, relation between removed and new element)).
inline RefineOutcome refine_engine(RefineKind kind, int k, const Graph& gA, const Graph& gB,
                                   long long budget = kDefaultEngineBudget) {
    int arity;
    switch (kind) {
    case RefineKind::ColourRefinement: arity = 1; break;
    case RefineKind::Wl:
        if (k < 2) throw Error("wl: k must be >= 2");
        arity = k;
        break;
    case RefineKind::WeakWl:
        if (k < 2) throw Error("weak_wl: k must be >= 2");
        arity = k - 1;
        break;
    }

    const int nS[2] = {gA.n, gB.n};
    const Graph* gS[2] = {&gA, &gB};
    long long tS[2];
    for (int s = 0; s < 2; ++s) tS[s] = detail::checked_pow(nS[s], arity, budget);
    if (tS[0] + tS[1] > budget)
        throw BudgetExceeded("refinement budget exceeded (limit " + std::to_string(budget) +
                             " tuples)");
    const long long T = tS[0] + tS[1];

    TupleColouring tc;
    tc.arity = arity;
    tc.nA = gA.n;
    tc.nB = gB.n;
    tc.tuplesA = tS[0];
    tc.tuplesB = tS[1];
    tc.colour.assign(T, 0);

    Verdict verdict;
    if (T == 0) {
        verdict.equivalent = true;
        return {verdict, tc};
    }

    detail::SigInterner interner;
    std::vector<int64_t> sig;
    std::vector<int32_t> provisional(T);

    auto decode = [&](long long idx, int n, std::vector<int>& t) {
        for (int i = 0; i < arity; ++i) {
            t[i] = static_cast<int>(idx % n);
            idx /= n;
        }
    };

    // initial colouring: quantifier-free type of the tuple
    {
        std::vector<int> t(arity);
        long long base = 0;
        for (int s = 0; s < 2; ++s) {
            const Graph& g = *gS[s];
            for (long long idx = 0; idx < tS[s]; ++idx) {
                decode(idx, nS[s], t);
                sig.clear();
                for (int i = 0; i < arity; ++i)
                    for (int j = i + 1; j < arity; ++j)
                        sig.push_back((t[i] == t[j] ? 2 : 0) + (g.edge(t[i], t[j]) ? 1 : 0));
                for (int i = 0; i < arity; ++i) sig.push_back(g.colour(t[i]));
                provisional[base + idx] = interner.add(sig.data(), sig.size());
            }
            base += tS[s];
        }
        auto rank = interner.canonical_ranks();
        for (long long i = 0; i < T; ++i) tc.colour[i] = rank[provisional[i]];
        tc.colour_count = interner.classes();
    }

    auto tally = [&](int32_t classes, std::vector<long long>& cA, std::vector<long long>& cB) {
        cA.assign(classes, 0);
        cB.assign(classes, 0);
        for (long long i = 0; i < tS[0]; ++i) ++cA[tc.colour[i]];
        for (long long i = 0; i < tS[1]; ++i) ++cB[tc.colour[tS[0] + i]];
    };
    auto first_divergent = [&](const std::vector<long long>& cA,
                               const std::vector<long long>& cB) -> int32_t {
        for (size_t c = 0; c < cA.size(); ++c)
            if (cA[c] != cB[c]) return static_cast<int32_t>(c);
        return -1;
    };

    int firstDivergenceRound = -1;
    {
        std::vector<long long> cA, cB;
        tally(tc.colour_count, cA, cB);
        if (first_divergent(cA, cB) >= 0) firstDivergenceRound = 0;
    }

    // refinement rounds
    const long long maxRounds = T + 1;
    std::vector<int32_t> lineClass(static_cast<size_t>(T) * (kind == RefineKind::Wl ? arity : 1));
    std::vector<int32_t> newColour(T);
    detail::SigInterner msetInterner;
    int round = 0;
    while (true) {
        ++round;
        if (round > maxRounds) throw Error("refinement failed to stabilize"); // unreachable
        interner.clear();

        if (kind == RefineKind::ColourRefinement) {
            long long base = 0;
            for (int s = 0; s < 2; ++s) {
                const Graph& g = *gS[s];
                std::vector<int64_t> nbr;
                for (int v = 0; v < nS[s]; ++v) {
                    nbr.clear();
                    for (int u = 0; u < nS[s]; ++u)
                        if (g.edge(v, u)) nbr.push_back(tc.colour[base + u]);
                    std::sort(nbr.begin(), nbr.end());
                    sig.clear();
                    sig.push_back(tc.colour[base + v]);
                    sig.insert(sig.end(), nbr.begin(), nbr.end());
                    provisional[base + v] = interner.add(sig.data(), sig.size());
                }
                base += tS[s];
            }
        } else if (kind == RefineKind::Wl) {
            // per structure and position j, all tuples of one line share the
            // multiset of line colours
            long long base = 0;
            for (int s = 0; s < 2; ++s) {
                const int n = nS[s];
                long long stride = 1;
                for (int j = 0; j < arity; ++j) {
                    std::vector<int64_t> mset(n);
                    const long long hiCount = tS[s] / (stride * n);
                    for (long long hi = 0; hi < hiCount; ++hi) {
                        for (long long lo = 0; lo < stride; ++lo) {
                            const long long lineBase = hi * stride * n + lo;
                            for (int a = 0; a < n; ++a)
                                mset[a] = tc.colour[base + lineBase + a * stride];
                            std::sort(mset.begin(), mset.end());
                            int32_t cls = msetInterner.add(mset.data(), mset.size());
                            for (int a = 0; a < n; ++a)
                                lineClass[(base + lineBase + a * stride) * arity + j] = cls;
                        }
                    }
                    stride *= n;
                }
                base += tS[s];
            }
            for (long long i = 0; i < T; ++i) {
                sig.clear();
                sig.push_back(tc.colour[i]);
                for (int j = 0; j < arity; ++j) sig.push_back(lineClass[i * arity + j]);
                provisional[i] = interner.add(sig.data(), sig.size());
            }
        } else { // WeakWl
            long long base = 0;
            std::vector<int32_t> mids(static_cast<size_t>(T) * arity);
            std::vector<int64_t> pairs, ser;
            for (int s = 0; s < 2; ++s) {
                const Graph& g = *gS[s];
                const int n = nS[s];
                long long stride = 1;
                for (int j = 0; j < arity; ++j) {
                    const long long hiCount = tS[s] / (stride * n);
                    for (long long hi = 0; hi < hiCount; ++hi) {
                        for (long long lo = 0; lo < stride; ++lo) {
                            const long long lineBase = hi * stride * n + lo;
                            // occupant x at position j; new element a; the
                            // relation between them is the fresh information
                            for (int x = 0; x < n; ++x) {
                                pairs.clear();
                                for (int a = 0; a < n; ++a) {
                                    int rel = x == a ? 0 : (g.edge(x, a) ? 1 : 2);
                                    pairs.push_back(
                                        static_cast<int64_t>(tc.colour[base + lineBase + a * stride]) * 4 +
                                        rel);
                                }
                                std::sort(pairs.begin(), pairs.end());
                                ser.clear();
                                for (size_t i = 0; i < pairs.size();) {
                                    size_t i2 = i;
                                    while (i2 < pairs.size() && pairs[i2] == pairs[i]) ++i2;
                                    ser.push_back(pairs[i]);
                                    ser.push_back(static_cast<int64_t>(i2 - i));
                                    i = i2;
                                }
                                mids[(base + lineBase + x * stride) * arity + j] =
                                    msetInterner.add(ser.data(), ser.size());
                            }
                        }
                    }
                    stride *= n;
                }
                base += tS[s];
            }
            for (long long i = 0; i < T; ++i) {
                sig.clear();
                sig.push_back(tc.colour[i]);
                for (int j = 0; j < arity; ++j) sig.push_back(mids[i * arity + j]);
                provisional[i] = interner.add(sig.data(), sig.size());
            }
        }
        msetInterner.clear();

        int32_t classes = interner.classes();
        if (classes == tc.colour_count) {
            tc.rounds = round;
            break; // no split: stable
        }
        auto rank = interner.canonical_ranks();
        for (long long i = 0; i < T; ++i) tc.colour[i] = rank[provisional[i]];
        tc.colour_count = classes;
        if (firstDivergenceRound < 0) {
            std::vector<long long> cA, cB;
            tally(classes, cA, cB);
            if (first_divergent(cA, cB) >= 0) firstDivergenceRound = round;
        }
    }

    tally(tc.colour_count, tc.countA, tc.countB);
    int32_t witness = first_divergent(tc.countA, tc.countB);
    verdict.equivalent = witness < 0;
    verdict.rounds = verdict.equivalent ? tc.rounds : firstDivergenceRound;
    verdict.witness_colour = witness;
    return {verdict, tc};
}

// ---------------------------------------------------------------------------

struct CrResult {
    Verdict verdict;
    TupleColouring colouring; // arity 1
    Partition partA, partB;   // stable partitions, blocks indexed per graph
    std::vector<int32_t> blockColourA, blockColourB; // block index -> joint colour id
    bool partitions_equivalent = false; // same colours, sizes and s-parameters
};

/// Colour refinement on the disjoint pair, plus the stable-partition view used
/// by the fractional-isomorphism correspondence.
inline CrResult colour_refinement(const Graph& gA, const Graph& gB,
                                  long long budget = kDefaultEngineBudget) {
    auto [verdict, tc] = refine_engine(RefineKind::ColourRefinement, 2, gA, gB, budget);
    CrResult res;
    res.verdict = verdict;
    res.colouring = std::move(tc);

    auto make_partition = [&](const Graph& g, bool inB, std::vector<int32_t>& blockColour) {
        std::vector<int> labels(g.n);
        for (int v = 0; v < g.n; ++v) {
            int one[1] = {v};
            labels[v] = res.colouring.colour_of(inB, one);
        }
        Partition p = g.n ? Partition::from_labels(labels) : Partition{};
        blockColour.assign(p.size(), -1);
        for (int v = 0; v < g.n; ++v) blockColour[p.block_of[v]] = labels[v];
        return p;
    };
    res.partA = make_partition(gA, false, res.blockColourA);
    res.partB = make_partition(gB, true, res.blockColourB);

    // Equivalent stable partitions: same colour classes with equal sizes and
    // equal s_ij parameters.
    res.partitions_equivalent = res.verdict.equivalent;
    if (res.partitions_equivalent && gA.n > 0) {
        auto sA = stability(gA.adjacency<Rat>(), res.partA);
        auto sB = stability(gB.adjacency<Rat>(), res.partB);
        if (!sA.stable || !sB.stable) res.partitions_equivalent = false;
        else {
            // align block indices through the joint colours
            std::unordered_map<int32_t, int> whereB;
            for (size_t b = 0; b < res.blockColourB.size(); ++b)
                whereB[res.blockColourB[b]] = static_cast<int>(b);
            for (size_t i = 0; i < res.blockColourA.size() && res.partitions_equivalent; ++i) {
                auto itI = whereB.find(res.blockColourA[i]);
                if (itI == whereB.end()) {
                    res.partitions_equivalent = false;
                    break;
                }
                if (res.partA.blocks[i].size() != res.partB.blocks[itI->second].size())
                    res.partitions_equivalent = false;
                for (size_t j = 0; j < res.blockColourA.size(); ++j) {
                    auto itJ = whereB.find(res.blockColourA[j]);
                    if (itJ == whereB.end() ||
                        sA.row_params(i, j) != sB.row_params(itI->second, itJ->second)) {
                        res.partitions_equivalent = false;
                        break;
                    }
                }
            }
        }
    }
    return res;
}

inline RefineOutcome wl(int k, const Graph& gA, const Graph& gB,
                        long long budget = kDefaultEngineBudget) {
    return refine_engine(RefineKind::Wl, k, gA, gB, budget);
}

/// Weak k-WL: colours (k-1)-tuples; realizes the weak bijective game's
/// refinement condition as a fixpoint. Different sizes lose immediately.
inline RefineOutcome weak_wl(int k, const Graph& gA, const Graph& gB,
                             long long budget = kDefaultEngineBudget) {
    if (gA.n != gB.n) {
        RefineOutcome out;
        out.verdict.equivalent = false;
        out.verdict.rounds = 0;
        out.colouring.arity = k - 1;
        out.colouring.nA = gA.n;
        out.colouring.nB = gB.n;
        return out;
    }
    return refine_engine(RefineKind::WeakWl, k, gA, gB, budget);
}

} // namespace isolab
