#pragma once

#include "twcut/statevector.hpp"

namespace twcut {

// Dense density matrix; row index bits are the "left" qubits, column bits the
// "right".  Practical up to ~10 qubits.
class DensityMatrix {
public:
    explicit DensityMatrix(int n);  // |0..0><0..0|
    static DensityMatrix from_state(const StateVector& sv);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }

    void apply(const Gate& g);  // unitary gates only
    // Two-qubit depolarizing: with probability p the pair is replaced by the
    // maximally mixed state.
    void depolarize2(int q0, int q1, double p);

    double trace() const;
    double prob_one(int q) const;
    double project(int q, int outcome);  // renormalizes, returns probability

    double expectation(const PauliTerm& term) const;
    double expectation(const Observable& o) const;

    // Diagonal in the computational basis (outcome distribution).
    std::vector<double> diagonal() const;

private:
    void apply_side(int q, const cplx m[4], bool left);
    void apply_side2(int q0, int q1, const cplx m[16], bool left);

    int n_;
    std::size_t dim_;
    std::vector<cplx> rho_;  // rho_[r * dim_ + c]
};

}  // namespace twcut
