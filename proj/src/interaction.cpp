#include "twcut/interaction.hpp"

#include <sstream>
#include <stdexcept>

namespace twcut {

const std::vector<int>& InteractionGraph::occurrences_of(const Edge& e) const {
    static const std::vector<int> empty;
    auto it = occurrences.find(e);
    return it == occurrences.end() ? empty : it->second;
}

InteractionGraph extract(const Circuit& c) {
    InteractionGraph ig;
    ig.base = UGraph(c.n_qubits);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (g.kind != GateKind::CX && g.kind != GateKind::CZ && g.kind != GateKind::RZZ) continue;
        Edge e = make_edge(g.q0, g.q1);
        if (!ig.base.has_edge(e.first, e.second)) ig.base.add_edge(e.first, e.second);
        ig.weight[e]++;
        ig.occurrences[e].push_back(static_cast<int>(i));
    }
    return ig;
}

std::string write_interaction_text(const InteractionGraph& ig) {
    std::ostringstream os;
    os << ig.base.num_nodes() << " " << ig.base.num_edges() << "\n";
    for (const auto& [u, v] : ig.base.edges())
        os << u << " " << v << " " << ig.weight_of({u, v}) << "\n";
    return os.str();
}

}  // namespace twcut
