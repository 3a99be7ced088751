#include "twcut/selection.hpp"

#include <stdexcept>

#include "twcut/betweenness.hpp"
#include "twcut/rng.hpp"

namespace twcut {

namespace {

std::vector<CandidateScore> score_candidates(const InteractionGraph& ig,
                                             const Stage1Scores& s1,
                                             const std::vector<Edge>& cand,
                                             const SelectParams& p) {
    auto bc_raw = edge_betweenness(ig.base);
    std::vector<CandidateScore> out;
    out.reserve(cand.size());
    for (const Edge& e : cand) {
        CandidateScore cs;
        cs.edge = e;
        cs.score1 = s1.score_of(e);
        cs.bc = normalize_bc(bc_raw.at(e), ig.base.num_nodes());
        cs.dp = degree_penalty(ig.base, e);
        cs.score2 = p.alpha2 * cs.bc - p.beta2 * cs.dp;
        out.push_back(cs);
    }
    return out;
}

CutSelection pick(const InteractionGraph& ig, std::vector<CandidateScore> scored,
                  const std::string& method) {
    const CandidateScore* best = &scored.front();
    for (const auto& cs : scored)
        if (cs.score2 > best->score2 || (cs.score2 == best->score2 && cs.edge < best->edge))
            best = &cs;
    CutSelection sel;
    sel.edge = best->edge;
    sel.gate_index = ig.occurrences_of(best->edge).front();
    sel.shortlist = std::move(scored);
    sel.method = method;
    return sel;
}

}  // namespace

CutSelection select_cut(const Circuit& c, const SelectParams& params) {
    InteractionGraph ig = extract(c);
    if (ig.base.num_edges() == 0) throw std::invalid_argument("circuit has no two-qubit gates");
    Stage1Scores s1 = stage1_scores(ig, params.alpha, params.beta);
    std::vector<Edge> cand = shortlist(s1, ig, params.k);
    return pick(ig, score_candidates(ig, s1, cand, params), "tw2s");
}

CutSelection select_cut_stage1(const Circuit& c, const SelectParams& params) {
    InteractionGraph ig = extract(c);
    if (ig.base.num_edges() == 0) throw std::invalid_argument("circuit has no two-qubit gates");
    Stage1Scores s1 = stage1_scores(ig, params.alpha, params.beta);
    std::vector<Edge> cand = shortlist(s1, ig, 1);

    CutSelection sel;
    sel.edge = cand.front();
    sel.gate_index = ig.occurrences_of(sel.edge).front();
    CandidateScore cs;
    cs.edge = sel.edge;
    cs.score1 = s1.score_of(sel.edge);
    sel.shortlist = {cs};
    sel.method = "stage1_only";
    return sel;
}

CutSelection random_cut(const Circuit& c, std::uint64_t seed) {
    std::vector<int> positions;
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        if (is_two_qubit(c.gates[i].kind)) positions.push_back(static_cast<int>(i));
    if (positions.empty()) throw std::invalid_argument("circuit has no two-qubit gates");

    Rng rng(seed);
    int pos = positions[rng.next_below(positions.size())];
    CutSelection sel;
    sel.gate_index = pos;
    sel.edge = make_edge(c.gates[pos].q0, c.gates[pos].q1);
    sel.method = "random";
    return sel;
}

}  // namespace twcut
