#pragma once

#include <cstdint>
#include <vector>

#include "twcut/circuit.hpp"
#include "twcut/density.hpp"
#include "twcut/pauli.hpp"
#include "twcut/statevector.hpp"

namespace twcut {

struct NoiseModel {
    double p_ecr = 0.0;   // 2q depolarizing per native 2q gate
    double p_meas = 0.0;  // classical bit flip per measurement

    bool enabled() const { return p_ecr > 0.0 || p_meas > 0.0; }
};

// Per-gate ECR-equivalent multiplicities for depolarizing placement.  Defaults
// to the native cost of each gate; routing attribution substitutes
// routed-circuit multiplicities (SWAP overhead included) on logical gates.
std::vector<double> native_ecr_equivalents(const Circuit& c);

// Mid-circuit measurements split execution into leaves: one per (true
// outcome, recorded bit) combination with nonzero weight.  clbits hold the
// RECORDED values (p_meas flips applied), which also drive CONDX feedback.
template <typename State>
struct Leaf {
    double weight = 1.0;
    std::vector<std::uint8_t> clbits;
    State state;
};

std::vector<Leaf<StateVector>> run_statevector(const Circuit& c, const NoiseModel& noise);
std::vector<Leaf<DensityMatrix>> run_density(const Circuit& c, const NoiseModel& noise,
                                             const std::vector<double>& ecr_equiv);

// Exact expectation under the model: statevector when p_ecr == 0 (width <= 12),
// density matrix otherwise (width <= 10).  sign_bits lists classical bits
// whose recorded value multiplies the estimate by (-1)^bit; terminal
// measurement flips contribute a (1-2*p_meas)^support factor per term.
double exact_expectation(const Circuit& c, const Observable& o, const NoiseModel& noise = {},
                         const std::vector<double>* ecr_equiv = nullptr,
                         const std::vector<int>& sign_bits = {});

// Variance of the single-shot estimator of o (grouped measurement, even split
// across groups), scaled so that the M-shot estimator has variance sigma^2/M.
double shot_variance(const Circuit& c, const Observable& o, const NoiseModel& noise = {},
                     const std::vector<double>* ecr_equiv = nullptr);

}  // namespace twcut
