#pragma once

#include <map>
#include <vector>

#include "twcut/circuit.hpp"
#include "twcut/graph.hpp"

namespace twcut {

// Weighted interaction graph of a circuit: one edge per qubit pair touched by
// an entangling 2q gate (CX, CZ, RZZ), weight = gate count, plus the ascending
// list of gate positions realizing each edge.
struct InteractionGraph {
    UGraph base;
    std::map<Edge, int> weight;
    std::map<Edge, std::vector<int>> occurrences;

    int weight_of(const Edge& e) const {
        auto it = weight.find(e);
        return it == weight.end() ? 0 : it->second;
    }
    const std::vector<int>& occurrences_of(const Edge& e) const;
};

InteractionGraph extract(const Circuit& c);

// Graph text format with a third column carrying the edge weight.
std::string write_interaction_text(const InteractionGraph& ig);

}  // namespace twcut
