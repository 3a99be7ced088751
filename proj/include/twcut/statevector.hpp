#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "twcut/circuit.hpp"
#include "twcut/pauli.hpp"

namespace twcut {

using cplx = std::complex<double>;

// Gate matrices (row-major; 2x2 or 4x4).  RZZ is diagonal but returned dense.
std::vector<cplx> gate_matrix(const Gate& g);

// Dense statevector over n qubits; qubit q is bit q of the amplitude index.
// Kernels are OpenMP-parallel above a size threshold; twcut::refsim holds a
// serial dense-matrix reference used to test them.
class StateVector {
public:
    explicit StateVector(int n);  // |0...0>

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    std::vector<cplx>& amplitudes() { return amp_; }

    void apply1(int q, const cplx m[4]);
    void apply2(int q0, int q1, const cplx m[16]);  // m indexed by (b1 b0) pairs
    // Unitary gates only; MEASURE/CONDX are the executor's job.
    void apply(const Gate& g);

    double norm2() const;
    double prob_one(int q) const;
    // Projects onto qubit q = outcome, renormalizes, returns the probability.
    double project(int q, int outcome);

    // Relabels qubits: new qubit perm[q] holds what qubit q held.
    void permute(const std::vector<int>& perm);

    double expectation(const PauliTerm& term) const;
    double expectation(const Observable& o) const;
    cplx inner(const StateVector& other) const;

private:
    int n_;
    std::vector<cplx> amp_;
};

namespace refsim {
// Serial reference: expands the gate to a dense 2^n x 2^n matrix and
// multiplies.  Only sensible for small n; kept as the oracle for the
// OpenMP kernels.
void apply_gate_dense(std::vector<cplx>& amp, int n, const Gate& g);
}  // namespace refsim

}  // namespace twcut
