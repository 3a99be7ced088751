#include "twcut/executor.hpp"

#include <cmath>
#include <stdexcept>

#include "twcut/router.hpp"

namespace twcut {

namespace {

constexpr int kMaxStatevectorQubits = 16;
constexpr int kMaxDensityQubits = 10;

template <typename State>
std::vector<Leaf<State>> run_impl(const Circuit& c, const NoiseModel& noise,
                                  const std::vector<double>* ecr_equiv, bool density) {
    c.validate();
    std::vector<Leaf<State>> leaves;
    leaves.push_back({1.0, std::vector<std::uint8_t>(c.n_clbits, 0), State(c.n_qubits)});

    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        if (g.kind == GateKind::MEASURE) {
            std::vector<Leaf<State>> next;
            for (auto& leaf : leaves) {
                for (int outcome = 0; outcome < 2; ++outcome) {
                    State collapsed = leaf.state;
                    double p = collapsed.project(g.q0, outcome);
                    if (p <= 0.0) continue;
                    // The recorded bit may be flipped; the flip happens before
                    // any classical feedback reads it.
                    if (noise.p_meas > 0.0) {
                        for (int rec = 0; rec < 2; ++rec) {
                            double pr = rec == outcome ? 1.0 - noise.p_meas : noise.p_meas;
                            Leaf<State> nl{leaf.weight * p * pr, leaf.clbits, collapsed};
                            nl.clbits[g.clbit] = static_cast<std::uint8_t>(rec);
                            next.push_back(std::move(nl));
                        }
                    } else {
                        Leaf<State> nl{leaf.weight * p, leaf.clbits, std::move(collapsed)};
                        nl.clbits[g.clbit] = static_cast<std::uint8_t>(outcome);
                        next.push_back(std::move(nl));
                    }
                }
            }
            leaves = std::move(next);
        } else if (g.kind == GateKind::CONDX) {
            for (auto& leaf : leaves)
                if (leaf.clbits[g.clbit]) leaf.state.apply(Gate::x(g.q0));
        } else {
            for (auto& leaf : leaves) {
                leaf.state.apply(g);
                if constexpr (std::is_same_v<State, DensityMatrix>) {
                    if (density && is_two_qubit(g.kind) && noise.p_ecr > 0.0) {
                        double k = ecr_equiv ? (*ecr_equiv)[gi]
                                             : static_cast<double>(native_cost(g.kind));
                        if (k > 0.0) {
                            double strength = 1.0 - std::pow(1.0 - noise.p_ecr, k);
                            leaf.state.depolarize2(g.q0, g.q1, strength);
                        }
                    }
                }
            }
        }
    }
    return leaves;
}

}  // namespace

std::vector<double> native_ecr_equivalents(const Circuit& c) {
    std::vector<double> k(c.gates.size(), 0.0);
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        k[i] = static_cast<double>(native_cost(c.gates[i].kind));
    return k;
}

std::vector<Leaf<StateVector>> run_statevector(const Circuit& c, const NoiseModel& noise) {
    if (c.n_qubits > kMaxStatevectorQubits)
        throw std::invalid_argument("statevector limited to 16 qubits");
    if (noise.p_ecr > 0.0)
        throw std::invalid_argument("depolarizing noise requires the density-matrix path");
    return run_impl<StateVector>(c, noise, nullptr, false);
}

std::vector<Leaf<DensityMatrix>> run_density(const Circuit& c, const NoiseModel& noise,
                                             const std::vector<double>& ecr_equiv) {
    if (c.n_qubits > kMaxDensityQubits)
        throw std::invalid_argument("density matrix limited to 10 qubits");
    if (ecr_equiv.size() != c.gates.size())
        throw std::invalid_argument("ecr_equiv size mismatch");
    return run_impl<DensityMatrix>(c, noise, &ecr_equiv, true);
}

namespace {

template <typename State>
double expectation_over_leaves(const std::vector<Leaf<State>>& leaves, const Observable& o,
                               const NoiseModel& noise, const std::vector<int>& sign_bits) {
    double value = 0.0;
    for (const auto& leaf : leaves) {
        double sign = 1.0;
        for (int b : sign_bits)
            if (leaf.clbits[b]) sign = -sign;
        double lv = 0.0;
        for (const auto& t : o.terms) {
            double flip = noise.p_meas > 0.0 ? std::pow(1.0 - 2.0 * noise.p_meas, t.support()) : 1.0;
            lv += flip * leaf.state.expectation(t);
        }
        value += leaf.weight * sign * lv;
    }
    return value;
}

}  // namespace

double exact_expectation(const Circuit& c, const Observable& o, const NoiseModel& noise,
                         const std::vector<double>* ecr_equiv, const std::vector<int>& sign_bits) {
    if (o.n_qubits != c.n_qubits) throw std::invalid_argument("observable width mismatch");
    if (noise.p_ecr > 0.0) {
        auto k = ecr_equiv ? *ecr_equiv : native_ecr_equivalents(c);
        auto leaves = run_density(c, noise, k);
        return expectation_over_leaves(leaves, o, noise, sign_bits);
    }
    auto leaves = run_statevector(c, noise);
    return expectation_over_leaves(leaves, o, noise, sign_bits);
}

namespace {

// Applies the per-bit classical flip channel to an outcome distribution.
void convolve_flips(std::vector<double>& p, int n, double p_flip) {
    if (p_flip <= 0.0) return;
    for (int q = 0; q < n; ++q) {
        const std::size_t mask = std::size_t{1} << q;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i & mask) continue;
            double a = p[i], b = p[i | mask];
            p[i] = (1.0 - p_flip) * a + p_flip * b;
            p[i | mask] = (1.0 - p_flip) * b + p_flip * a;
        }
    }
}

template <typename State>
std::vector<double> leaf_diagonal(const State& s);

template <>
std::vector<double> leaf_diagonal(const StateVector& s) {
    std::vector<double> d(s.dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(s.amplitudes()[i]);
    return d;
}

template <>
std::vector<double> leaf_diagonal(const DensityMatrix& s) {
    return s.diagonal();
}

template <typename State>
void group_moments(const std::vector<Leaf<State>>& leaves, const Observable& o,
                   const MeasurementGroup& grp, const NoiseModel& noise, double& mean,
                   double& second) {
    mean = 0.0;
    second = 0.0;
    for (const auto& leaf : leaves) {
        auto dist = leaf_diagonal(leaf.state);
        convolve_flips(dist, o.n_qubits, noise.p_meas);
        for (std::size_t z = 0; z < dist.size(); ++z) {
            if (dist[z] <= 0.0) continue;
            double v = 0.0;
            for (int t : grp.term_ids) {
                const auto& term = o.terms[t];
                int par = 0;
                for (int q = 0; q < o.n_qubits; ++q)
                    if (term.paulis[q] != 'I' && (z >> q & 1)) par ^= 1;
                v += term.coeff * (par ? -1.0 : 1.0);
            }
            mean += leaf.weight * dist[z] * v;
            second += leaf.weight * dist[z] * v * v;
        }
    }
}

}  // namespace

double shot_variance(const Circuit& c, const Observable& o, const NoiseModel& noise,
                     const std::vector<double>* ecr_equiv) {
    auto groups = group_observable(o);
    double total = 0.0;
    for (const auto& grp : groups) {
        Circuit rotated = c;
        for (const auto& g : basis_rotation(grp.basis)) rotated.add(g);
        double mean = 0.0, second = 0.0;
        if (noise.p_ecr > 0.0) {
            auto k = ecr_equiv ? *ecr_equiv : native_ecr_equivalents(c);
            k.resize(rotated.gates.size(), 0.0);
            auto leaves = run_density(rotated, noise, k);
            group_moments(leaves, o, grp, noise, mean, second);
        } else {
            auto leaves = run_statevector(rotated, noise);
            group_moments(leaves, o, grp, noise, mean, second);
        }
        total += second - mean * mean;
    }
    return total * static_cast<double>(groups.size());
}

}  // namespace twcut
