#include "twcut/elimination.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace twcut {

namespace {

// Row-per-vertex adjacency bitset; fill counting is popcount over word rows.
class BitAdj {
public:
    explicit BitAdj(int n) : words_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * words_, 0) {}

    void set(int u, int v) {
        rows_[u * words_ + v / 64] |= 1ULL << (v % 64);
        rows_[v * words_ + u / 64] |= 1ULL << (u % 64);
    }
    void clear(int u, int v) {
        rows_[u * words_ + v / 64] &= ~(1ULL << (v % 64));
        rows_[v * words_ + u / 64] &= ~(1ULL << (u % 64));
    }
    bool test(int u, int v) const { return rows_[u * words_ + v / 64] >> (v % 64) & 1; }

    // Neighbors of u not adjacent to x (excluding x itself), i.e. the missing
    // pairs {x, y} contributed by y in N(u).
    int missing_from(int u, int x) const {
        const std::uint64_t* ru = &rows_[u * words_];
        const std::uint64_t* rx = &rows_[x * words_];
        int count = 0;
        for (int w = 0; w < words_; ++w) count += std::popcount(ru[w] & ~rx[w]);
        // ru includes x itself (x in N(u)); x is never in rx (no self-loops).
        return count - 1;
    }

    std::vector<int> neighbors(int u) const {
        std::vector<int> out;
        const std::uint64_t* ru = &rows_[u * words_];
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = ru[w];
            while (bits) {
                int b = std::countr_zero(bits);
                out.push_back(w * 64 + b);
                bits &= bits - 1;
            }
        }
        return out;
    }

private:
    int words_;
    std::vector<std::uint64_t> rows_;
};

}  // namespace

EliminationTrace min_fill_trace(const UGraph& g) {
    const int n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("empty graph");

    BitAdj adj(n);
    for (const auto& [u, v] : g.edges()) adj.set(u, v);

    std::vector<bool> removed(n, false);
    EliminationTrace trace;
    trace.ordering.reserve(n);
    trace.steps.reserve(n);

    for (int step = 0; step < n; ++step) {
        // Minimal fill count; ties prefer the higher-degree vertex, then the
        // smaller id.  A pure id tie-break funnels elimination into the
        // low-id region of the graph, which skews the stage-1 attribution on
        // graphs whose node numbering follows community blocks.
        int best = -1;
        long best_fill = -1;
        int best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (removed[v]) continue;
            auto nbrs = adj.neighbors(v);
            long fills = 0;
            for (int x : nbrs) fills += adj.missing_from(v, x);
            fills /= 2;
            int deg = static_cast<int>(nbrs.size());
            if (best == -1 || fills < best_fill || (fills == best_fill && deg > best_deg)) {
                best = v;
                best_fill = fills;
                best_deg = deg;
            }
        }

        auto nbrs = adj.neighbors(best);
        EliminationStep st;
        st.vertex = best;
        st.bag = nbrs;
        st.bag.push_back(best);
        std::sort(st.bag.begin(), st.bag.end());
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (!adj.test(nbrs[i], nbrs[j])) st.fill_edges.push_back(make_edge(nbrs[i], nbrs[j]));
        std::sort(st.fill_edges.begin(), st.fill_edges.end());

        for (const auto& [x, y] : st.fill_edges) adj.set(x, y);
        for (int x : nbrs) adj.clear(best, x);
        removed[best] = true;

        trace.tw_ub = std::max(trace.tw_ub, static_cast<int>(st.bag.size()) - 1);
        trace.ordering.push_back(best);
        trace.steps.push_back(std::move(st));
    }
    return trace;
}

Stage1Scores stage1_scores(const InteractionGraph& ig, double alpha, double beta) {
    return stage1_scores(ig, min_fill_trace(ig.base), alpha, beta);
}

Stage1Scores stage1_scores(const InteractionGraph& ig, const EliminationTrace& trace, double alpha,
                           double beta) {
    Stage1Scores out;
    out.alpha = alpha;
    out.beta = beta;
    std::map<Edge, double> acc;
    for (const auto& st : trace.steps) {
        if (st.fill_edges.empty()) continue;
        const double g_v = alpha * (static_cast<double>(st.bag.size()) - 1.0) +
                           beta * static_cast<double>(st.fill_edges.size());
        for (const auto& [x, y] : st.fill_edges) {
            // Only original interaction edges accrue; {v,x} may be an earlier
            // fill edge, in which case the increment is dropped.
            Edge vx = make_edge(st.vertex, x);
            Edge vy = make_edge(st.vertex, y);
            if (ig.base.has_edge(vx.first, vx.second)) acc[vx] += g_v;
            if (ig.base.has_edge(vy.first, vy.second)) acc[vy] += g_v;
        }
    }
    for (const auto& [e, a] : acc) out.score[e] = a * ig.weight_of(e);
    return out;
}

std::vector<Edge> shortlist(const Stage1Scores& scores, const InteractionGraph& ig, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (ig.base.num_edges() == 0) throw std::invalid_argument("interaction graph has no edges");

    std::vector<Edge> cand;
    for (const auto& e : ig.base.edges())
        if (!ig.occurrences_of(e).empty()) cand.push_back(e);

    bool all_zero = true;
    for (const auto& e : cand)
        if (scores.score_of(e) != 0.0) all_zero = false;

    if (all_zero) {
        std::stable_sort(cand.begin(), cand.end(), [&](const Edge& a, const Edge& b) {
            int wa = ig.weight_of(a), wb = ig.weight_of(b);
            if (wa != wb) return wa > wb;
            return a < b;
        });
    } else {
        std::stable_sort(cand.begin(), cand.end(), [&](const Edge& a, const Edge& b) {
            double sa = scores.score_of(a), sb = scores.score_of(b);
            if (sa != sb) return sa > sb;
            return a < b;
        });
    }
    if (static_cast<int>(cand.size()) > k) cand.resize(k);
    return cand;
}

}  // namespace twcut
