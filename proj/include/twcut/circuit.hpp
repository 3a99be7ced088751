#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twcut/graph.hpp"

namespace twcut {

enum class GateKind { RX, RZ, H, X, SX, RZZ, CX, CZ, SWAP, MEASURE, CONDX };

bool is_two_qubit(GateKind k);
bool has_angle(GateKind k);
bool uses_clbit(GateKind k);
const char* mnemonic(GateKind k);

struct Gate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;      // second operand for 2q kinds
    double angle = 0.0;
    int clbit = -1;   // MEASURE target / CONDX source

    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta, -1}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta, -1}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0.0, -1}; }
    static Gate x(int q) { return {GateKind::X, q, -1, 0.0, -1}; }
    static Gate sx(int q) { return {GateKind::SX, q, -1, 0.0, -1}; }
    static Gate rzz(int a, int b, double theta) { return {GateKind::RZZ, a, b, theta, -1}; }
    static Gate cx(int c, int t) { return {GateKind::CX, c, t, 0.0, -1}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b, 0.0, -1}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, a, b, 0.0, -1}; }
    static Gate measure(int q, int c) { return {GateKind::MEASURE, q, -1, 0.0, c}; }
    static Gate condx(int q, int c) { return {GateKind::CONDX, q, -1, 0.0, c}; }
};

// Ordered gate list over n_qubits logical qubits.  Gate order is program
// order; validate() checks index ranges, operand distinctness and that every
// CONDX reads a classical bit some earlier MEASURE wrote.
struct Circuit {
    int n_qubits = 0;
    int n_clbits = 0;
    std::vector<Gate> gates;
    std::string name;

    Circuit() = default;
    explicit Circuit(int nq, int nc = 0) : n_qubits(nq), n_clbits(nc) {}

    void add(const Gate& g) { gates.push_back(g); }
    int num_two_qubit() const;
    void validate() const;
};

// One CX per edge of g, edges in sorted (u,v) order, control = min(u,v).
Circuit circuit_from_graph(const UGraph& g);

enum class TfimTopology { Chain, J1J2Ring };

struct TfimSpec {
    int n = 0;
    int trotter_steps = 1;
    double j1 = 1.0;
    double j2 = 0.0;  // 0 for the pure 1D model
    double h = 0.7;
    // RZZ gate angle per J1 edge per step, in the exp(-i angle/2 ZZ)
    // convention.  The default pi applies a quarter-turn ZZ phase per step,
    // which makes even step counts refocus the chain and odd counts leave it
    // with a near-zero energy expectation.
    double rzz_angle = 3.14159265358979323846;
    double dt_x = 0.1;
    TfimTopology topology = TfimTopology::Chain;
};

// |+>^n preparation followed by trotter_steps layers of RZZ couplings and RX
// rotations.  Per step the RX angle is 2*h*dt_x; J2 couplings use the rzz
// angle scaled by j2/j1.
Circuit build_tfim(const TfimSpec& spec);

// J1 / J2 edge lists for a topology (the ring's NNN chords do not wrap; its
// unique long-range edge is {0, n-1}).
std::vector<Edge> tfim_j1_edges(const TfimSpec& spec);
std::vector<Edge> tfim_j2_edges(const TfimSpec& spec);

struct CircuitParseError : std::runtime_error {
    int line;
    CircuitParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Line format: "qubits N", optional "clbits M", one gate per line, '#'
// comments, case-insensitive mnemonics.  parse(emit(c)) == c bit-exactly.
Circuit parse_circuit(const std::string& text);
std::string emit_circuit(const Circuit& c);
Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const Circuit& c, const std::string& path);

// ASAP layering: layer(g) = 1 + max layer of earlier gates sharing a qubit.
std::vector<int> circuit_layers(const Circuit& c);
int layer_index(const Circuit& c, int gate_position);

}  // namespace twcut
