#include "twcut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "twcut/rng.hpp"

namespace twcut {

bool UGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    return edge_set_.count(make_edge(u, v)) > 0;
}

void UGraph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
    Edge e = make_edge(u, v);
    if (!edge_set_.insert(e).second) return;  // parallel edge: keep simple
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edges_dirty_ = true;
}

const std::vector<Edge>& UGraph::edges_sorted() const {
    if (edges_dirty_ || edges_.size() != edge_set_.size()) {
        edges_.assign(edge_set_.begin(), edge_set_.end());
        edges_dirty_ = false;
    }
    return edges_;
}

GraphFamilySpec GraphFamilySpec::grid(int rows, int cols) {
    GraphFamilySpec s;
    s.family = GraphFamily::Grid;
    s.rows = rows;
    s.cols = cols;
    return s;
}

GraphFamilySpec GraphFamilySpec::watts_strogatz(int n, int k, double p, std::uint64_t seed) {
    GraphFamilySpec s;
    s.family = GraphFamily::WattsStrogatz;
    s.ws_n = n;
    s.ws_k = k;
    s.ws_p = p;
    s.seed = seed;
    return s;
}

GraphFamilySpec GraphFamilySpec::barbell(int k, int m) {
    GraphFamilySpec s;
    s.family = GraphFamily::Barbell;
    s.barbell_k = k;
    s.barbell_m = m;
    return s;
}

GraphFamilySpec GraphFamilySpec::sbm(int n_per, int m_communities, double p_in, double p_out,
                                     std::uint64_t seed) {
    GraphFamilySpec s;
    s.family = GraphFamily::SBM;
    s.sbm_n_per = n_per;
    s.sbm_m = m_communities;
    s.sbm_p_in = p_in;
    s.sbm_p_out = p_out;
    s.seed = seed;
    return s;
}

GraphFamilySpec GraphFamilySpec::erdos_renyi(int n, double p, std::uint64_t seed) {
    GraphFamilySpec s;
    s.family = GraphFamily::ErdosRenyi;
    s.er_n = n;
    s.er_p = p;
    s.seed = seed;
    return s;
}

GraphFamilySpec GraphFamilySpec::j1j2_ring(int n) {
    GraphFamilySpec s;
    s.family = GraphFamily::J1J2Ring;
    s.ring_n = n;
    return s;
}

std::string GraphFamilySpec::name() const {
    std::ostringstream os;
    switch (family) {
        case GraphFamily::Grid: os << "grid_" << rows << "x" << cols; break;
        case GraphFamily::WattsStrogatz:
            os << "ws_n" << ws_n << "_k" << ws_k << "_p" << ws_p << "_s" << seed;
            break;
        case GraphFamily::Barbell: os << "barbell_k" << barbell_k << "_m" << barbell_m; break;
        case GraphFamily::SBM:
            os << "sbm_n" << sbm_n_per * sbm_m << "_m" << sbm_m << "_pin" << sbm_p_in << "_pout"
               << sbm_p_out << "_s" << seed;
            break;
        case GraphFamily::ErdosRenyi: os << "er_n" << er_n << "_p" << er_p << "_s" << seed; break;
        case GraphFamily::J1J2Ring: os << "j1j2ring_n" << ring_n; break;
    }
    return os.str();
}

namespace {

void check_prob(double p, const char* field) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string("probability out of [0,1]: ") + field);
}

void check_size(int v, const char* field) {
    if (v < 1) throw std::invalid_argument(std::string("size parameter < 1: ") + field);
}

UGraph gen_grid(int rows, int cols) {
    check_size(rows, "rows");
    check_size(cols, "cols");
    UGraph g(rows * cols);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

UGraph gen_watts_strogatz(int n, int k, double p, std::uint64_t seed) {
    check_size(n, "n");
    check_prob(p, "p");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even and >= 2: k");
    if (k >= n) throw std::invalid_argument("k must be < n: k");
    UGraph g(n);
    for (int j = 1; j <= k / 2; ++j)
        for (int u = 0; u < n; ++u) g.add_edge(u, (u + j) % n);

    // Rewire the far endpoint of each ring edge with probability p, skipping
    // rewires that would create self-loops or duplicates.
    Rng rng(seed);
    std::set<Edge> edges;
    for (int j = 1; j <= k / 2; ++j)
        for (int u = 0; u < n; ++u) edges.insert(make_edge(u, (u + j) % n));
    for (int j = 1; j <= k / 2; ++j) {
        for (int u = 0; u < n; ++u) {
            Edge orig = make_edge(u, (u + j) % n);
            if (!edges.count(orig)) continue;  // already rewired away
            if (!rng.bernoulli(p)) continue;
            int w = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            int attempts = 0;
            while ((w == u || edges.count(make_edge(u, w))) && attempts < 8 * n) {
                w = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
                ++attempts;
            }
            if (w == u || edges.count(make_edge(u, w))) continue;  // saturated: keep original
            edges.erase(orig);
            edges.insert(make_edge(u, w));
        }
    }
    UGraph out(n);
    for (const auto& [a, b] : edges) out.add_edge(a, b);
    return out;
}

UGraph gen_barbell(int k, int m) {
    check_size(k, "k");
    if (k < 2) throw std::invalid_argument("clique size must be >= 2: k");
    if (m < 0) throw std::invalid_argument("bridge length must be >= 0: m");
    UGraph g(2 * k + m);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) g.add_edge(a, b);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) g.add_edge(k + m + a, k + m + b);
    int prev = k - 1;
    for (int i = 0; i < m; ++i) {
        g.add_edge(prev, k + i);
        prev = k + i;
    }
    g.add_edge(prev, k + m);
    return g;
}

UGraph gen_sbm(int n_per, int m_comm, double p_in, double p_out, std::uint64_t seed) {
    check_size(n_per, "n_per");
    check_size(m_comm, "m_communities");
    check_prob(p_in, "p_in");
    check_prob(p_out, "p_out");
    int n = n_per * m_comm;
    UGraph g(n);
    Rng rng(seed);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            bool same = (u / n_per) == (v / n_per);
            if (rng.bernoulli(same ? p_in : p_out)) g.add_edge(u, v);
        }
    }
    return g;
}

UGraph gen_erdos_renyi(int n, double p, std::uint64_t seed) {
    check_size(n, "n");
    check_prob(p, "p");
    UGraph g(n);
    Rng rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

// Ring of n qubits with nearest-neighbour edges (including the closing edge
// {0, n-1}) plus next-nearest-neighbour chords {i, i+2} for i <= n-3.  The
// chords do not wrap: {0, n-1} is the unique long-range edge, which is what
// gives it the highest betweenness in the family.
UGraph gen_j1j2_ring(int n) {
    if (n < 5) throw std::invalid_argument("ring size must be >= 5: n");
    UGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    g.add_edge(0, n - 1);
    for (int i = 0; i + 2 < n; ++i) g.add_edge(i, i + 2);
    return g;
}

}  // namespace

UGraph generate(const GraphFamilySpec& spec) {
    switch (spec.family) {
        case GraphFamily::Grid: return gen_grid(spec.rows, spec.cols);
        case GraphFamily::WattsStrogatz:
            return gen_watts_strogatz(spec.ws_n, spec.ws_k, spec.ws_p, spec.seed);
        case GraphFamily::Barbell: return gen_barbell(spec.barbell_k, spec.barbell_m);
        case GraphFamily::SBM:
            return gen_sbm(spec.sbm_n_per, spec.sbm_m, spec.sbm_p_in, spec.sbm_p_out, spec.seed);
        case GraphFamily::ErdosRenyi: return gen_erdos_renyi(spec.er_n, spec.er_p, spec.seed);
        case GraphFamily::J1J2Ring: return gen_j1j2_ring(spec.ring_n);
    }
    throw std::invalid_argument("unknown family");
}

double mixing_ratio(double p_in, double p_out) {
    if (p_in <= 0.0) throw std::domain_error("mixing_ratio requires p_in > 0");
    return p_out / p_in;
}

std::vector<int> label_propagation_communities(const UGraph& g, std::uint64_t seed) {
    const int n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("empty graph");
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        rng.shuffle(order);
        bool changed = false;
        for (int u : order) {
            if (g.degree(u) == 0) continue;
            std::map<int, int> counts;
            for (int v : g.neighbors(u)) counts[label[v]]++;
            int best = label[u];
            int best_count = 0;
            for (const auto& [lbl, cnt] : counts) {
                if (cnt > best_count || (cnt == best_count && lbl < best)) {
                    best = lbl;
                    best_count = cnt;
                }
            }
            // Keep the current label when it is among the most frequent.
            auto it = counts.find(label[u]);
            if (it != counts.end() && it->second == best_count) best = label[u];
            if (best != label[u]) {
                label[u] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return label;
}

double modularity(const UGraph& g, const std::vector<int>& partition) {
    const int n = g.num_nodes();
    if (static_cast<int>(partition.size()) != n)
        throw std::invalid_argument("partition must cover all nodes");
    const double m = g.num_edges();
    if (m == 0.0) return 0.0;

    std::map<int, double> intra, deg_sum;
    for (int u = 0; u < n; ++u) deg_sum[partition[u]] += g.degree(u);
    for (const auto& [u, v] : g.edges())
        if (partition[u] == partition[v]) intra[partition[u]] += 1.0;

    double q = 0.0;
    for (const auto& [c, d] : deg_sum) {
        double e_cc = intra.count(c) ? intra.at(c) : 0.0;
        double frac = d / (2.0 * m);
        q += e_cc / m - frac * frac;
    }
    return q;
}

double inter_community_fraction(const UGraph& g, const std::vector<int>& partition) {
    if (static_cast<int>(partition.size()) != g.num_nodes())
        throw std::invalid_argument("partition must cover all nodes");
    if (g.num_edges() == 0) throw std::invalid_argument("graph has no edges");
    int crossing = 0;
    for (const auto& [u, v] : g.edges())
        if (partition[u] != partition[v]) ++crossing;
    return static_cast<double>(crossing) / g.num_edges();
}

std::string write_graph_text(const UGraph& g) {
    std::ostringstream os;
    os << g.num_nodes() << " " << g.num_edges() << "\n";
    for (const auto& [u, v] : g.edges()) os << u << " " << v << "\n";
    return os.str();
}

UGraph read_graph_text(const std::string& text) {
    std::istringstream is(text);
    int n = -1, m = -1;
    if (!(is >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("bad graph header");
    UGraph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw std::invalid_argument("truncated edge list");
        g.add_edge(u, v);
    }
    return g;
}

UGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return read_graph_text(os.str());
}

void write_graph_file(const UGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << write_graph_text(g);
}

}  // namespace twcut
