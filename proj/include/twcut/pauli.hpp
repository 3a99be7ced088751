#pragma once

#include <string>
#include <vector>

#include "twcut/circuit.hpp"

namespace twcut {

// Pauli string over n qubits; character j acts on qubit j, letters I/X/Y/Z.
struct PauliTerm {
    double coeff = 0.0;
    std::string paulis;

    int support() const;
};

struct Observable {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;

    void add(double coeff, const std::string& paulis);
};

// One term per line: "<coeff> <pauli string>", '#' comments.
Observable parse_observable(const std::string& text, int n_qubits);
std::string emit_observable(const Observable& o);
Observable read_observable_file(const std::string& path, int n_qubits);

// The TFIM Hamiltonian of a spec: j1 * sum ZZ over J1 edges, j2 * sum ZZ over
// J2 edges, h * sum X.
Observable tfim_observable(const TfimSpec& spec);

// Qubitwise-commuting grouping for measurement: terms in one group agree on
// every qubit where both are non-identity.
struct MeasurementGroup {
    std::string basis;           // per-qubit letter, I where unconstrained
    std::vector<int> term_ids;
};
std::vector<MeasurementGroup> group_observable(const Observable& o);

// Basis-change gates appended before a terminal Z measurement (H for X,
// RZ(-pi/2)+H for Y).
std::vector<Gate> basis_rotation(const std::string& basis);

}  // namespace twcut
