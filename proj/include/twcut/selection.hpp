#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twcut/circuit.hpp"
#include "twcut/elimination.hpp"
#include "twcut/graph.hpp"
#include "twcut/interaction.hpp"

namespace twcut {

struct CandidateScore {
    Edge edge;
    double score1 = 0.0;
    double bc = 0.0;      // normalized
    double dp = 0.0;
    double score2 = 0.0;  // alpha2*bc - beta2*dp
};

struct CutSelection {
    int gate_index = -1;                  // first occurrence of edge
    Edge edge{-1, -1};
    std::vector<CandidateScore> shortlist;
    std::string method;                   // "tw2s" | "stage1_only" | "random"
};

struct SelectParams {
    int k = 3;
    double alpha = 1.0;
    double beta = 1.0;
    double alpha2 = 1.0;
    double beta2 = 0.3;
};

// Full two-stage pipeline: interaction extraction, stage-1 shortlist, then the
// score-2 argmax with BC and DP computed on the full interaction graph.  Pure
// graph work; no routing involved.
CutSelection select_cut(const Circuit& c, const SelectParams& params = {});

// Stage 1 alone: cut the top-score-1 edge (same shortlist rules, k=1).
CutSelection select_cut_stage1(const Circuit& c, const SelectParams& params = {});

// Uniform over 2q gate positions.
CutSelection random_cut(const Circuit& c, std::uint64_t seed);

}  // namespace twcut
