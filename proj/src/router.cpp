#include "twcut/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twcut/interaction.hpp"
#include "twcut/rng.hpp"

namespace twcut {

int native_cost(GateKind k) {
    switch (k) {
        case GateKind::CX:
        case GateKind::CZ: return 1;
        case GateKind::RZZ: return 2;
        case GateKind::SWAP: return 3;
        default: return 0;
    }
}

namespace {

// Seeded greedy placement: interaction nodes in degree-descending order, the
// component root on a random degree-3 physical node, the rest BFS-placed on
// the free node minimizing total distance to already-placed neighbors.
std::vector<int> greedy_layout(const Circuit& c, const CouplingMap& cm, Rng& rng) {
    const int nl = c.n_qubits;
    const int np = cm.num_qubits();
    InteractionGraph ig = extract(c);

    std::vector<int> layout(nl, -1);
    std::vector<bool> used(np, false);

    std::vector<int> by_degree(nl);
    for (int i = 0; i < nl; ++i) by_degree[i] = i;
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](int a, int b) {
        return ig.base.degree(a) > ig.base.degree(b);
    });

    int max_pdeg = 0;
    for (int p = 0; p < np; ++p) max_pdeg = std::max(max_pdeg, cm.graph().degree(p));

    std::vector<int> placed;
    auto place_root = [&](int logical) {
        std::vector<int> hubs;
        for (int p = 0; p < np; ++p)
            if (!used[p] && cm.graph().degree(p) == std::min(3, max_pdeg)) hubs.push_back(p);
        if (hubs.empty())
            for (int p = 0; p < np; ++p)
                if (!used[p]) hubs.push_back(p);
        int p = hubs[rng.next_below(hubs.size())];
        layout[logical] = p;
        used[p] = true;
        placed.push_back(p);
    };

    // Cost ties are broken toward the already-placed cluster (then by id) so
    // placements stay compact; the seed only picks the root hub.
    auto place_near = [&](int logical) {
        long best_cost = std::numeric_limits<long>::max();
        long best_spread = std::numeric_limits<long>::max();
        int best = -1;
        for (int p = 0; p < np; ++p) {
            if (used[p]) continue;
            long cost = 0;
            for (int nb : ig.base.neighbors(logical))
                if (layout[nb] >= 0) cost += cm.distance(p, layout[nb]);
            if (cost > best_cost) continue;
            long spread = 0;
            for (int q : placed) spread += cm.distance(p, q);
            if (cost < best_cost || spread < best_spread) {
                best_cost = cost;
                best_spread = spread;
                best = p;
            }
        }
        layout[logical] = best;
        used[best] = true;
        placed.push_back(best);
    };

    for (int root : by_degree) {
        if (layout[root] >= 0) continue;
        place_root(root);
        // BFS over the interaction component.
        std::vector<int> queue{root};
        std::size_t head = 0;
        while (head < queue.size()) {
            int v = queue[head++];
            std::vector<int> nbrs = ig.base.neighbors(v);
            std::sort(nbrs.begin(), nbrs.end());
            for (int w : nbrs) {
                if (layout[w] >= 0) continue;
                place_near(w);
                queue.push_back(w);
            }
        }
    }
    return layout;
}

RoutedResult route_with_layout(const Circuit& c, const CouplingMap& cm,
                               const std::vector<int>& layout, const RouterParams& params) {
    std::vector<int> phys_of(layout);  // logical -> physical
    std::vector<int> log_of(cm.num_qubits(), -1);
    for (int l = 0; l < c.n_qubits; ++l) {
        if (phys_of[l] < 0 || phys_of[l] >= cm.num_qubits())
            throw std::invalid_argument("layout entry out of range");
        log_of[phys_of[l]] = l;
    }

    // Dependency edges: consecutive gates sharing a qubit.
    const int ng = static_cast<int>(c.gates.size());
    std::vector<std::vector<int>> succ(ng);
    std::vector<int> deps(ng, 0);
    {
        std::vector<int> last_on_qubit(c.n_qubits, -1);
        for (int i = 0; i < ng; ++i) {
            const Gate& g = c.gates[i];
            auto link = [&](int q) {
                if (last_on_qubit[q] >= 0) {
                    succ[last_on_qubit[q]].push_back(i);
                    deps[i]++;
                }
                last_on_qubit[q] = i;
            };
            link(g.q0);
            if (is_two_qubit(g.kind)) link(g.q1);
        }
    }

    std::vector<int> front;  // ready gates, kept sorted by input index
    for (int i = 0; i < ng; ++i)
        if (deps[i] == 0) front.push_back(i);

    RoutedResult out;
    out.circuit = Circuit(cm.num_qubits(), c.n_clbits);
    out.circuit.name = c.name;
    out.initial_layout = layout;

    auto emit = [&](Gate g, int input_index) {
        out.circuit.add(g);
        out.provenance.push_back(input_index);
        if (is_two_qubit(g.kind)) out.ecr_count += native_cost(g.kind);
    };

    std::vector<bool> done(ng, false);
    int executed = 0;
    // Stall tracking: if the front's total distance fails to reach a new
    // minimum within the guard, the heuristic is cycling and the first
    // blocked gate is routed directly.
    int swaps_since_best = 0;
    long best_front_dist = std::numeric_limits<long>::max();
    const int swap_guard = 12;
    // SABRE-style decay: recently swapped qubits get their candidate SWAPs
    // penalized, which breaks see-saw cycles; reset whenever a gate executes.
    std::vector<double> qubit_decay(cm.num_qubits(), 1.0);

    // Ordered list of not-yet-executed 2q gates, for the lookahead window.
    std::vector<int> two_q_order;
    for (int i = 0; i < ng; ++i)
        if (is_two_qubit(c.gates[i].kind)) two_q_order.push_back(i);
    std::size_t two_q_head = 0;

    auto retire = [&](int i) {
        done[i] = true;
        ++executed;
        swaps_since_best = 0;
        best_front_dist = std::numeric_limits<long>::max();
        std::fill(qubit_decay.begin(), qubit_decay.end(), 1.0);
        for (int s : succ[i])
            if (--deps[s] == 0) front.push_back(s);
    };

    while (executed < ng) {
        std::sort(front.begin(), front.end());
        while (two_q_head < two_q_order.size() && done[two_q_order[two_q_head]]) ++two_q_head;

        // Execute everything executable in the current layout.
        bool progressed = false;
        std::vector<int> blocked;
        for (std::size_t fi = 0; fi < front.size(); ++fi) {
            int i = front[fi];
            const Gate& g = c.gates[i];
            if (!is_two_qubit(g.kind)) {
                Gate pg = g;
                pg.q0 = phys_of[g.q0];
                emit(pg, i);
                retire(i);
                progressed = true;
            } else {
                int p0 = phys_of[g.q0], p1 = phys_of[g.q1];
                if (cm.connected(p0, p1)) {
                    Gate pg = g;
                    pg.q0 = p0;
                    pg.q1 = p1;
                    emit(pg, i);
                    retire(i);
                    progressed = true;
                } else {
                    blocked.push_back(i);
                }
            }
        }
        // Rebuild the front: blocked gates plus anything newly released.
        std::vector<int> nf;
        for (int i : blocked)
            if (!done[i]) nf.push_back(i);
        for (int i : front)
            if (!done[i] && deps[i] == 0 && std::find(nf.begin(), nf.end(), i) == nf.end())
                nf.push_back(i);
        front = std::move(nf);
        if (progressed) continue;
        if (front.empty()) break;

        // All front gates are blocked 2q gates: insert the argmin-cost SWAP.
        auto apply_swap = [&](int a, int b) {
            emit(Gate::swap(a, b), -1);
            out.swaps_inserted++;
            int la = log_of[a], lb = log_of[b];
            if (la >= 0) phys_of[la] = b;
            if (lb >= 0) phys_of[lb] = a;
            log_of[a] = lb;
            log_of[b] = la;
            qubit_decay[a] += 0.1;
            qubit_decay[b] += 0.1;
        };

        long front_dist = 0;
        for (int i : front) {
            const Gate& g = c.gates[i];
            front_dist += cm.distance(phys_of[g.q0], phys_of[g.q1]);
        }
        if (front_dist < best_front_dist) {
            best_front_dist = front_dist;
            swaps_since_best = 0;
        } else {
            ++swaps_since_best;
        }

        if (swaps_since_best > swap_guard) {
            // Stall breaker: walk the first blocked gate's operands together
            // along a shortest path, which is guaranteed to execute it.
            const Gate& g = c.gates[front.front()];
            while (!cm.connected(phys_of[g.q0], phys_of[g.q1])) {
                int p0 = phys_of[g.q0], p1 = phys_of[g.q1];
                int step = -1;
                for (int nb : cm.graph().neighbors(p0))
                    if (cm.distance(nb, p1) < cm.distance(p0, p1) && (step < 0 || nb < step))
                        step = nb;
                apply_swap(std::min(p0, step), std::max(p0, step));
            }
            continue;
        }

        std::vector<Edge> candidates;
        for (int i : front) {
            const Gate& g = c.gates[i];
            for (int p : {phys_of[g.q0], phys_of[g.q1]})
                for (int nb : cm.graph().neighbors(p)) candidates.push_back(make_edge(p, nb));
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        double best_cost = std::numeric_limits<double>::infinity();
        Edge best{-1, -1};
        for (const Edge& sw : candidates) {
            auto mapped = [&](int q) {
                int p = phys_of[q];
                if (p == sw.first) return sw.second;
                if (p == sw.second) return sw.first;
                return p;
            };
            double cost = 0.0;
            for (int i : front) {
                const Gate& g = c.gates[i];
                cost += cm.distance(mapped(g.q0), mapped(g.q1));
            }
            int seen = 0;
            for (std::size_t t = two_q_head; t < two_q_order.size() && seen < params.lookahead;
                 ++t) {
                int i = two_q_order[t];
                if (done[i]) continue;
                if (std::find(front.begin(), front.end(), i) != front.end()) continue;
                const Gate& g = c.gates[i];
                cost += params.decay * cm.distance(mapped(g.q0), mapped(g.q1));
                ++seen;
            }
            cost *= std::max(qubit_decay[sw.first], qubit_decay[sw.second]);
            if (cost < best_cost) {
                best_cost = cost;
                best = sw;
            }
        }
        apply_swap(best.first, best.second);
    }

    out.final_layout = phys_of;
    return out;
}

}  // namespace

RoutedResult route(const Circuit& c, const CouplingMap& cm, std::uint64_t seed,
                   const RouterParams& params,
                   const std::optional<std::vector<int>>& layout_override,
                   const std::optional<std::vector<int>>& warm_start) {
    if (c.n_qubits > cm.num_qubits())
        throw std::invalid_argument("circuit width exceeds coupling map");

    auto check_layout = [&](const std::vector<int>& layout) {
        if (static_cast<int>(layout.size()) != c.n_qubits)
            throw std::invalid_argument("layout size mismatch");
        std::vector<bool> seen(cm.num_qubits(), false);
        for (int p : layout) {
            if (p < 0 || p >= cm.num_qubits())
                throw std::invalid_argument("layout entry out of range");
            if (seen[p]) throw std::invalid_argument("layout assigns one physical qubit twice");
            seen[p] = true;
        }
    };

    if (layout_override) {
        check_layout(*layout_override);
        RoutedResult out = route_with_layout(c, cm, *layout_override, params);
        out.seed = seed;
        return out;
    }

    // Several seeded placement candidates, each refined by a reverse routing
    // pass (route the reversed circuit from the forward pass's final layout;
    // its final layout becomes the forward initial layout).  The best routed
    // result over candidates is kept.  Deterministic given the seed.
    Circuit reversed(c.n_qubits, c.n_clbits);
    reversed.gates.assign(c.gates.rbegin(), c.gates.rend());

    Rng rng(seed);
    RoutedResult best;
    bool have = false;
    auto consider = [&](const std::vector<int>& layout) {
        RoutedResult fwd = route_with_layout(c, cm, layout, params);
        if (params.reverse_refine) {
            RoutedResult back = route_with_layout(reversed, cm, fwd.final_layout, params);
            RoutedResult refined = route_with_layout(c, cm, back.final_layout, params);
            if (refined.ecr_count <= fwd.ecr_count) fwd = std::move(refined);
        }
        if (!have || fwd.ecr_count < best.ecr_count) {
            best = std::move(fwd);
            have = true;
        }
    };
    for (int candidate = 0; candidate < std::max(1, params.layout_candidates); ++candidate)
        consider(greedy_layout(c, cm, rng));
    if (warm_start) {
        check_layout(*warm_start);
        consider(*warm_start);
    }
    best.seed = seed;
    return best;
}

double ecr_count(const Circuit& c, const CouplingMap& cm, const std::vector<std::uint64_t>& seeds,
                 const RouterParams& params) {
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    double total = 0.0;
    for (auto s : seeds) total += route(c, cm, s, params).ecr_count;
    return total / static_cast<double>(seeds.size());
}

Circuit remove_gate(const Circuit& c, int gate_index) {
    if (gate_index < 0 || gate_index >= static_cast<int>(c.gates.size()))
        throw std::invalid_argument("gate index out of range");
    Circuit out(c.n_qubits, c.n_clbits);
    out.name = c.name;
    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i)
        if (i != gate_index) out.add(c.gates[i]);
    return out;
}

// The cut circuit is transpiled on its own (cutting frees the placement as
// well as the routed gates), with the baseline placement joining its layout
// candidates so heuristic luck cannot report a phantom regression.
double delta_ecr(const Circuit& c, const CutSelection& cut, const CouplingMap& cm,
                 const std::vector<std::uint64_t>& seeds, const RouterParams& params) {
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    Circuit cut_circuit = remove_gate(c, cut.gate_index);
    double total = 0.0;
    for (auto s : seeds) {
        RoutedResult base = route(c, cm, s, params);
        RoutedResult after = route(cut_circuit, cm, s, params, std::nullopt, base.initial_layout);
        total += base.ecr_count - after.ecr_count;
    }
    return total / static_cast<double>(seeds.size());
}

double OracleTable::efficiency(double delta) const {
    if (max_delta == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return delta / max_delta;
}

OracleTable oracle_eval(const Circuit& c, const CouplingMap& cm,
                        const std::vector<std::uint64_t>& seeds, const RouterParams& params) {
    InteractionGraph ig = extract(c);
    if (ig.base.num_edges() == 0) throw std::invalid_argument("circuit has no two-qubit gates");

    std::vector<RoutedResult> base;
    double base_mean = 0.0;
    for (auto s : seeds) {
        base.push_back(route(c, cm, s, params));
        base_mean += base.back().ecr_count;
    }
    base_mean /= static_cast<double>(seeds.size());

    const auto& edges = ig.base.edges();
    OracleTable table;
    table.rows.resize(edges.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        OracleRow row;
        row.edge = edges[i];
        row.gate_index = ig.occurrences_of(edges[i]).front();
        Circuit cut_circuit = remove_gate(c, row.gate_index);
        double cut_mean = 0.0;
        for (std::size_t k = 0; k < seeds.size(); ++k)
            cut_mean += route(cut_circuit, cm, seeds[k], params, std::nullopt,
                              base[k].initial_layout)
                            .ecr_count;
        row.delta = base_mean - cut_mean / static_cast<double>(seeds.size());
        table.rows[i] = row;
    }
    table.max_delta = table.rows.front().delta;
    for (const auto& r : table.rows) table.max_delta = std::max(table.max_delta, r.delta);
    return table;
}

std::vector<double> ecr_attribution(const Circuit& c, const CouplingMap& cm,
                                    const std::vector<std::uint64_t>& seeds,
                                    const RouterParams& params) {
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    std::vector<double> acc(c.gates.size(), 0.0);
    for (auto s : seeds) {
        RoutedResult r = route(c, cm, s, params);
        int pending_swaps = 0;
        int last_2q = -1;
        for (std::size_t i = 0; i < r.circuit.gates.size(); ++i) {
            const Gate& g = r.circuit.gates[i];
            if (!is_two_qubit(g.kind)) continue;
            if (r.provenance[i] < 0) {
                pending_swaps++;
                continue;
            }
            acc[r.provenance[i]] += native_cost(g.kind) + 3.0 * pending_swaps;
            pending_swaps = 0;
            last_2q = r.provenance[i];
        }
        if (pending_swaps > 0 && last_2q >= 0) acc[last_2q] += 3.0 * pending_swaps;
    }
    for (auto& v : acc) v /= static_cast<double>(seeds.size());
    return acc;
}

CompactRouted compact(const RoutedResult& r, int n_logical) {
    std::vector<int> touched;
    std::vector<int> map(r.circuit.n_qubits, -1);
    auto touch = [&](int p) {
        if (map[p] < 0) {
            map[p] = static_cast<int>(touched.size());
            touched.push_back(p);
        }
    };
    for (int l = 0; l < n_logical; ++l) touch(r.initial_layout[l]);
    for (const auto& g : r.circuit.gates) {
        touch(g.q0);
        if (is_two_qubit(g.kind)) touch(g.q1);
    }

    CompactRouted out;
    out.circuit = Circuit(static_cast<int>(touched.size()), r.circuit.n_clbits);
    out.circuit.name = r.circuit.name;
    for (const auto& g : r.circuit.gates) {
        Gate cg = g;
        cg.q0 = map[g.q0];
        if (is_two_qubit(g.kind)) cg.q1 = map[g.q1];
        out.circuit.add(cg);
    }
    out.initial_layout.resize(n_logical);
    out.final_layout.resize(n_logical);
    for (int l = 0; l < n_logical; ++l) {
        out.initial_layout[l] = map[r.initial_layout[l]];
        out.final_layout[l] = map[r.final_layout[l]];
    }
    return out;
}

}  // namespace twcut
