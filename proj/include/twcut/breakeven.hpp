#pragma once

#include <string>

#include "twcut/estimate.hpp"

namespace twcut {

struct BreakevenParams {
    double p = 0.0;        // per-gate error rate
    double n_ecr = 0.0;    // baseline ECR count N
    double delta_n = 0.0;  // ECR reduction
    double sigma_h = 0.0;  // observable standard deviation proxy
    double h_ideal = 0.0;  // |<H>_ideal|
    double gamma = 3.0;

    void validate() const;
};

// Depolarizing bias model: |<H>_ideal| * (1 - exp(-p*N)).
double bias(const BreakevenParams& bp, double ecr_count);

// Breakeven shot count for the shared-budget strategy:
//   (gamma^2-1) sigma^2 / (H^2 [(1-e^{-pN})^2 - (1-e^{-p(N-dN)})^2]).
// Returns +infinity when h_ideal == 0.
double m_star(const BreakevenParams& bp);

struct MsePair {
    double base = 0.0;
    double qpd = 0.0;
};

// MSE_base = bias^2(N) + sigma^2/M; MSE_qpd = bias^2(N-dN) + v*sigma^2/M with
// v = gamma^2 for the shared strategy and 1 for per-subcircuit x1.5.
MsePair mse_model(const BreakevenParams& bp, long shots, ShotStrategy strategy);

// Serializes doubles for CSV/JSON; infinity becomes "inf".
std::string format_metric(double v);

}  // namespace twcut
