#pragma once

#include <vector>

#include "twcut/graph.hpp"

namespace twcut {

// Device connectivity plus an all-pairs BFS distance table.
class CouplingMap {
public:
    explicit CouplingMap(UGraph g);

    const UGraph& graph() const { return graph_; }
    int num_qubits() const { return graph_.num_nodes(); }
    int distance(int u, int v) const { return dist_[u][v]; }
    bool connected(int u, int v) const { return graph_.has_edge(u, v); }
    int diameter() const { return diameter_; }

private:
    UGraph graph_;
    std::vector<std::vector<int>> dist_;
    int diameter_ = 0;
};

// Heavy-hex lattice: d rows of 2d+1 qubits (top row missing the last column,
// bottom row missing the first) joined by (d+1)/2 rung qubits between
// consecutive rows, alternating column parity.  d odd, d >= 3; d = 7 gives the
// 127-qubit instance.  Max degree 3, connected.
CouplingMap heavy_hex(int d);

// Smallest heavy-hex instance with at least `width` qubits.
CouplingMap heavy_hex_for_width(int width);

}  // namespace twcut
