#pragma once

#include <array>
#include <complex>
#include <vector>

#include "twcut/circuit.hpp"

namespace twcut {

// One quasi-probability branch: local replacement sequences for the two
// operand qubits of the cut gate, with a real coefficient.  Ops use
// placeholder qubit ids 0 (the gate's q0 side) and 1 (q1 side); a MEASURE op
// marks the qubit whose recorded outcome multiplies the branch estimate by
// (-1)^bit.
struct QpdBranch {
    double coeff = 0.0;
    std::vector<Gate> ops;   // placeholder qubits, clbit ignored
    int sign_qubit = -1;     // placeholder id measured with sign, or -1
};

// Six-branch decomposition of CX, CZ or RZZ(theta).  For CX/CZ all
// coefficients are +-1/2 and sum of |c_k| = 3; for RZZ(theta) the
// coefficients depend on the angle and sum to 1 + 2|sin(theta)|.
// Construction is verified against the gate's Choi matrix and throws if the
// identity fails.
std::vector<QpdBranch> qpd_branches(GateKind kind, double angle = 0.0);

double qpd_gamma(const std::vector<QpdBranch>& branches);

// 16x16 Choi matrices over the two operand qubits; the oracle algebra behind
// the construction-time check (independent of the statevector executor).
using Choi = std::array<std::complex<double>, 256>;
Choi choi_of_gate(GateKind kind, double angle = 0.0);
Choi choi_of_branches(const std::vector<QpdBranch>& branches);
double choi_distance(const Choi& a, const Choi& b);  // Frobenius

// Replaces the gate at gate_index by the branch body.  Allocates one new
// classical bit when the branch measures; its index is returned in
// sign_clbit (-1 if none).
struct SubstitutedCircuit {
    Circuit circuit;
    int sign_clbit = -1;
};
SubstitutedCircuit substitute_branch(const Circuit& c, int gate_index, const QpdBranch& branch);

}  // namespace twcut
