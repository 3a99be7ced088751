#pragma once

#include <map>
#include <vector>

#include "twcut/graph.hpp"
#include "twcut/interaction.hpp"

namespace twcut {

struct EliminationStep {
    int vertex;
    std::vector<int> bag;         // {v} plus current neighbors, ascending
    std::vector<Edge> fill_edges; // pairs among neighbors absent when v is eliminated
};

struct EliminationTrace {
    std::vector<int> ordering;
    std::vector<EliminationStep> steps;
    int tw_ub = 0;  // max over steps of |bag| - 1
};

// Min-fill elimination: repeatedly remove the vertex creating the fewest fill
// edges (tie-break: smallest id), recording bag and fill edges per step.
EliminationTrace min_fill_trace(const UGraph& g);

struct Stage1Scores {
    std::map<Edge, double> score;  // only original interaction edges appear
    double alpha = 1.0;
    double beta = 1.0;

    double score_of(const Edge& e) const {
        auto it = score.find(e);
        return it == score.end() ? 0.0 : it->second;
    }
};

// For each elimination step v and fill edge {x,y}, the original edges {v,x}
// and {v,y} each accrue g(v) = alpha*(|B(v)|-1) + beta*|F(v)|; an increment
// whose edge is itself an earlier fill edge is dropped.  Final score is the
// accumulator scaled by the interaction weight w(e).
Stage1Scores stage1_scores(const InteractionGraph& ig, double alpha = 1.0, double beta = 1.0);
Stage1Scores stage1_scores(const InteractionGraph& ig, const EliminationTrace& trace,
                           double alpha = 1.0, double beta = 1.0);

// Top-K edges by score descending (ties lexicographic), restricted to edges
// with at least one gate occurrence.  All-zero scores fall back to the K
// highest-weight edges.
std::vector<Edge> shortlist(const Stage1Scores& scores, const InteractionGraph& ig, int k);

}  // namespace twcut
