#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace twcut {

using Edge = std::pair<int, int>;  // always stored with first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Undirected simple graph on nodes 0..n-1.  No self-loops, no parallel edges.
class UGraph {
public:
    UGraph() = default;
    explicit UGraph(int n) : n_(n), adj_(n) {}

    int num_nodes() const { return n_; }
    int num_edges() const { return static_cast<int>(edge_set_.size()); }

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);

    const std::vector<int>& neighbors(int u) const { return adj_[u]; }
    int degree(int u) const { return static_cast<int>(adj_[u].size()); }
    // Sorted, each edge once with u < v.
    const std::vector<Edge>& edges() const { return edges_sorted(); }

private:
    const std::vector<Edge>& edges_sorted() const;

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::set<Edge> edge_set_;
    mutable std::vector<Edge> edges_;
    mutable bool edges_dirty_ = false;
};

enum class GraphFamily { Grid, WattsStrogatz, Barbell, SBM, ErdosRenyi, J1J2Ring };

struct GraphFamilySpec {
    GraphFamily family = GraphFamily::Grid;
    // Grid
    int rows = 0, cols = 0;
    // WattsStrogatz
    int ws_n = 0, ws_k = 0;
    double ws_p = 0.0;
    // Barbell
    int barbell_k = 0, barbell_m = 0;
    // SBM
    int sbm_n_per = 0, sbm_m = 0;
    double sbm_p_in = 0.0, sbm_p_out = 0.0;
    // ErdosRenyi
    int er_n = 0;
    double er_p = 0.0;
    // J1J2Ring
    int ring_n = 0;

    std::uint64_t seed = 0;

    static GraphFamilySpec grid(int rows, int cols);
    static GraphFamilySpec watts_strogatz(int n, int k, double p, std::uint64_t seed);
    static GraphFamilySpec barbell(int k, int m);
    static GraphFamilySpec sbm(int n_per, int m_communities, double p_in, double p_out,
                               std::uint64_t seed);
    static GraphFamilySpec erdos_renyi(int n, double p, std::uint64_t seed);
    static GraphFamilySpec j1j2_ring(int n);

    std::string name() const;
};

// Deterministic under (spec, seed); throws std::invalid_argument naming the
// offending field for bad parameters.
UGraph generate(const GraphFamilySpec& spec);

double mixing_ratio(double p_in, double p_out);

// Asynchronous label propagation, seeded visit order, capped at 100 sweeps.
// Returns one community id per node; ids are the surviving node labels.
std::vector<int> label_propagation_communities(const UGraph& g, std::uint64_t seed);

// Newman modularity Q for a node -> community assignment.
double modularity(const UGraph& g, const std::vector<int>& partition);

// Fraction of edges whose endpoints lie in different communities.
double inter_community_fraction(const UGraph& g, const std::vector<int>& partition);

// Text format: first line "n m", then m lines "u v" with u < v.
std::string write_graph_text(const UGraph& g);
UGraph read_graph_text(const std::string& text);
UGraph read_graph_file(const std::string& path);
void write_graph_file(const UGraph& g, const std::string& path);

}  // namespace twcut
