#include "twcut/betweenness.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

namespace twcut {

namespace {

// Edge contributions from one BFS source, written into acc (indexed by the
// position of each edge in g.edges()).
void brandes_from_source(const UGraph& g, int s, const std::map<Edge, int>& edge_index,
                         std::vector<double>& acc) {
    const int n = g.num_nodes();
    std::vector<int> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<std::vector<int>> preds(n);
    std::vector<int> order;
    order.reserve(n);

    std::deque<int> queue;
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (int w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if (dist[w] == dist[v] + 1) {
                sigma[w] += sigma[v];
                preds[w].push_back(v);
            }
        }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int w = *it;
        for (int v : preds[w]) {
            double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
            acc[edge_index.at(make_edge(v, w))] += c;
            delta[v] += c;
        }
    }
}

std::map<Edge, int> index_edges(const UGraph& g) {
    std::map<Edge, int> idx;
    int i = 0;
    for (const auto& e : g.edges()) idx[e] = i++;
    return idx;
}

std::map<Edge, double> collect(const UGraph& g, const std::vector<double>& acc) {
    std::map<Edge, double> out;
    int i = 0;
    // Each unordered pair is visited from both endpoints; halve.
    for (const auto& e : g.edges()) out[e] = acc[i++] / 2.0;
    return out;
}

}  // namespace

std::map<Edge, double> edge_betweenness_serial(const UGraph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");
    auto edge_index = index_edges(g);
    std::vector<double> acc(g.num_edges(), 0.0);
    for (int s = 0; s < g.num_nodes(); ++s) brandes_from_source(g, s, edge_index, acc);
    return collect(g, acc);
}

std::map<Edge, double> edge_betweenness(const UGraph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");
    const int n = g.num_nodes();
    const int m = g.num_edges();
    auto edge_index = index_edges(g);
    std::vector<double> acc(m, 0.0);

    // Sources processed in blocks; per-source contributions are stored and
    // reduced serially in ascending source order, keeping the floating-point
    // accumulation order independent of the thread schedule.
    const int block = 64;
    std::vector<std::vector<double>> per_source(block);
    for (int start = 0; start < n; start += block) {
        const int end = std::min(n, start + block);
#pragma omp parallel for schedule(dynamic)
        for (int s = start; s < end; ++s) {
            auto& local = per_source[s - start];
            local.assign(m, 0.0);
            brandes_from_source(g, s, edge_index, local);
        }
        for (int s = start; s < end; ++s)
            for (int i = 0; i < m; ++i) acc[i] += per_source[s - start][i];
    }
    return collect(g, acc);
}

double normalize_bc(double raw, int n) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    return raw / (static_cast<double>(n) * (n - 1) / 2.0);
}

double degree_penalty(const UGraph& g, const Edge& e) {
    if (g.num_edges() == 0) throw std::invalid_argument("graph has no edges");
    if (!g.has_edge(e.first, e.second)) throw std::invalid_argument("edge not in graph");
    int d_max = 0;
    for (int u = 0; u < g.num_nodes(); ++u) d_max = std::max(d_max, g.degree(u));
    return static_cast<double>(g.degree(e.first) + g.degree(e.second)) / (2.0 * d_max);
}

}  // namespace twcut
