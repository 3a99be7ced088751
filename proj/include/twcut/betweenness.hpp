#pragma once

#include <map>

#include "twcut/graph.hpp"

namespace twcut {

// Raw edge betweenness centrality: for each edge, the sum over unordered node
// pairs {s,t} of sigma(s,t|e)/sigma(s,t), unweighted shortest paths, pairs in
// different components contributing 0.  Brandes dependency accumulation, one
// BFS per source.  The OpenMP variant reduces per-source contributions in a
// fixed source order so results do not depend on the thread schedule.
std::map<Edge, double> edge_betweenness(const UGraph& g);
std::map<Edge, double> edge_betweenness_serial(const UGraph& g);

// raw / (n(n-1)/2), the maximum raw value a single edge can attain.
double normalize_bc(double raw, int n);

// (deg(u) + deg(v)) / (2 * d_max).
double degree_penalty(const UGraph& g, const Edge& e);

}  // namespace twcut
