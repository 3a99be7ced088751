#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "twcut/circuit.hpp"
#include "twcut/coupling.hpp"
#include "twcut/selection.hpp"

namespace twcut {

// Native two-qubit cost in ECR-equivalents: CX/CZ -> 1, RZZ -> 2, SWAP -> 3.
int native_cost(GateKind k);

struct RoutedResult {
    Circuit circuit;                     // on physical qubits, SWAPs inserted
    int ecr_count = 0;                   // sum of native costs over 2q gates
    std::vector<int> initial_layout;     // logical -> physical
    std::vector<int> final_layout;       // logical -> physical after all SWAPs
    std::uint64_t seed = 0;
    int swaps_inserted = 0;
    // provenance[i] = input gate index of output gate i, or -1 for a SWAP.
    std::vector<int> provenance;
};

struct RouterParams {
    int lookahead = 20;          // two-qubit gates beyond the front layer
    double decay = 0.5;          // weight of the lookahead term
    int layout_candidates = 4;   // seeded placements tried per call
    bool reverse_refine = true;  // refine each placement with a reverse pass
};

// SABRE-style routing: seeded greedy initial placement, front-layer execution,
// blocked gates resolved by the argmin-cost SWAP on edges adjacent to front
// operands (tie-break smallest edge).  Several placement candidates are tried
// per call (each refined by a reverse pass) and the best kept; warm_start, if
// given, joins the candidate pool.  Deterministic given the seed.
RoutedResult route(const Circuit& c, const CouplingMap& cm, std::uint64_t seed,
                   const RouterParams& params = {},
                   const std::optional<std::vector<int>>& layout_override = std::nullopt,
                   const std::optional<std::vector<int>>& warm_start = std::nullopt);

// Mean routed ECR count over a seed list.
double ecr_count(const Circuit& c, const CouplingMap& cm, const std::vector<std::uint64_t>& seeds,
                 const RouterParams& params = {});

Circuit remove_gate(const Circuit& c, int gate_index);

// ECR(c) - ECR(c with the cut gate deleted); QPD branch bodies are local and
// do not enter the routing cost.
double delta_ecr(const Circuit& c, const CutSelection& cut, const CouplingMap& cm,
                 const std::vector<std::uint64_t>& seeds, const RouterParams& params = {});

struct OracleRow {
    Edge edge;
    int gate_index = -1;
    double delta = 0.0;
};

struct OracleTable {
    std::vector<OracleRow> rows;
    double max_delta = 0.0;
    // delta / max; NaN when max == 0 (undefined).
    double efficiency(double delta) const;
};

// Exhaustive per-edge evaluation: for every interaction edge, the delta-ECR of
// cutting its first occurrence.
OracleTable oracle_eval(const Circuit& c, const CouplingMap& cm,
                        const std::vector<std::uint64_t>& seeds, const RouterParams& params = {});

// Per-input-gate ECR-equivalents including SWAP overhead: each inserted SWAP's
// cost is attributed to the next executed two-qubit gate.  Averaged over
// seeds; used to place depolarizing noise on the logical circuit with routed
// multiplicities.
std::vector<double> ecr_attribution(const Circuit& c, const CouplingMap& cm,
                                    const std::vector<std::uint64_t>& seeds,
                                    const RouterParams& params = {});

// Restriction of a routed circuit to its touched physical qubits, with the
// layouts remapped accordingly (for simulating routed circuits directly).
struct CompactRouted {
    Circuit circuit;
    std::vector<int> initial_layout;  // logical -> compact
    std::vector<int> final_layout;    // logical -> compact
};
CompactRouted compact(const RoutedResult& r, int n_logical);

}  // namespace twcut
