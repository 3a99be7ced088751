#include "twcut/breakeven.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace twcut {

void BreakevenParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
    if (!(delta_n > 0.0 && delta_n <= n_ecr))
        throw std::invalid_argument("delta_n must satisfy 0 < delta_n <= n_ecr");
    if (!(sigma_h > 0.0)) throw std::invalid_argument("sigma_h must be positive");
    if (h_ideal < 0.0) throw std::invalid_argument("h_ideal must be nonnegative");
}

double bias(const BreakevenParams& bp, double ecr_count) {
    return bp.h_ideal * (1.0 - std::exp(-bp.p * ecr_count));
}

double m_star(const BreakevenParams& bp) {
    bp.validate();
    if (bp.h_ideal == 0.0) return std::numeric_limits<double>::infinity();
    const double b_base = 1.0 - std::exp(-bp.p * bp.n_ecr);
    const double b_cut = 1.0 - std::exp(-bp.p * (bp.n_ecr - bp.delta_n));
    const double denom = bp.h_ideal * bp.h_ideal * (b_base * b_base - b_cut * b_cut);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return (bp.gamma * bp.gamma - 1.0) * bp.sigma_h * bp.sigma_h / denom;
}

MsePair mse_model(const BreakevenParams& bp, long shots, ShotStrategy strategy) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const double m = static_cast<double>(shots);
    const double var_factor = strategy == ShotStrategy::Shared ? bp.gamma * bp.gamma : 1.0;
    MsePair out;
    const double b0 = bias(bp, bp.n_ecr);
    const double b1 = bias(bp, bp.n_ecr - bp.delta_n);
    out.base = b0 * b0 + bp.sigma_h * bp.sigma_h / m;
    out.qpd = b1 * b1 + var_factor * bp.sigma_h * bp.sigma_h / m;
    return out;
}

std::string format_metric(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "undefined";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace twcut
