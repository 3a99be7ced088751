#include "twcut/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twcut/rng.hpp"

namespace twcut {

const char* strategy_name(ShotStrategy s) {
    return s == ShotStrategy::Shared ? "shared" : "per_subcircuit_1_5x";
}

ShotStrategy parse_strategy(const std::string& name) {
    if (name == "shared") return ShotStrategy::Shared;
    if (name == "per_subcircuit_1_5x" || name == "per_subcircuit")
        return ShotStrategy::PerSubcircuit15;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

namespace {

struct GroupSampler {
    std::vector<double> leaf_cdf;
    std::vector<std::vector<double>> outcome_cdf;  // per leaf
    std::vector<std::vector<std::uint8_t>> leaf_clbits;
    double total_weight = 0.0;
};

// Shot evaluation for one measurement group: value of the group's terms for a
// sampled (possibly bit-flipped) outcome, multiplied by the leaf's sign bits.
double shot_value(const Observable& o, const MeasurementGroup& grp, std::size_t z,
                  const std::vector<std::uint8_t>& clbits, const std::vector<int>& sign_bits) {
    double v = 0.0;
    for (int t : grp.term_ids) {
        const auto& term = o.terms[t];
        int par = 0;
        for (int q = 0; q < o.n_qubits; ++q)
            if (term.paulis[q] != 'I' && (z >> q & 1)) par ^= 1;
        v += term.coeff * (par ? -1.0 : 1.0);
    }
    for (int b : sign_bits)
        if (clbits[b]) v = -v;
    return v;
}

template <typename State>
GroupSampler build_sampler(const std::vector<Leaf<State>>& leaves) {
    GroupSampler s;
    double acc = 0.0;
    for (const auto& leaf : leaves) {
        acc += leaf.weight;
        s.leaf_cdf.push_back(acc);
        s.leaf_clbits.push_back(leaf.clbits);
        std::vector<double> dist;
        if constexpr (std::is_same_v<State, StateVector>) {
            dist.resize(leaf.state.dim());
            for (std::size_t i = 0; i < dist.size(); ++i)
                dist[i] = std::norm(leaf.state.amplitudes()[i]);
        } else {
            dist = leaf.state.diagonal();
        }
        double c = 0.0;
        for (auto& p : dist) {
            c += p;
            p = c;
        }
        s.outcome_cdf.push_back(std::move(dist));
    }
    s.total_weight = acc;
    return s;
}

std::size_t sample_cdf(const std::vector<double>& cdf, double target) {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.end()) return cdf.size() - 1;
    return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

EstimateResult sample_expectation(const Circuit& c, const Observable& o, long shots,
                                  const NoiseModel& noise, std::uint64_t seed,
                                  const std::vector<double>* ecr_equiv,
                                  const std::vector<int>& sign_bits) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (o.n_qubits != c.n_qubits) throw std::invalid_argument("observable width mismatch");

    auto groups = group_observable(o);
    const int n_groups = static_cast<int>(groups.size());
    Rng rng(seed);

    double total = 0.0;
    for (int gi = 0; gi < n_groups; ++gi) {
        long m = shots / n_groups + (gi < shots % n_groups ? 1 : 0);
        if (m == 0) continue;
        Circuit rotated = c;
        for (const auto& g : basis_rotation(groups[gi].basis)) rotated.add(g);

        GroupSampler sampler;
        if (noise.p_ecr > 0.0) {
            auto k = ecr_equiv ? *ecr_equiv : native_ecr_equivalents(c);
            k.resize(rotated.gates.size(), 0.0);
            sampler = build_sampler(run_density(rotated, noise, k));
        } else {
            sampler = build_sampler(run_statevector(rotated, noise));
        }

        double sum = 0.0;
        for (long s = 0; s < m; ++s) {
            std::size_t li = sample_cdf(sampler.leaf_cdf, rng.next_double() * sampler.total_weight);
            const auto& ocdf = sampler.outcome_cdf[li];
            double w = ocdf.back();
            std::size_t z = sample_cdf(ocdf, rng.next_double() * w);
            if (noise.p_meas > 0.0)
                for (int q = 0; q < c.n_qubits; ++q)
                    if (rng.bernoulli(noise.p_meas)) z ^= std::size_t{1} << q;
            sum += shot_value(o, groups[gi], z, sampler.leaf_clbits[li], sign_bits);
        }
        total += sum / static_cast<double>(m);
    }

    EstimateResult r;
    r.value = total;
    r.shots_used = {shots};
    r.strategy = "direct";
    r.seed = seed;
    return r;
}

std::vector<long> allocate_shots(long budget, int branches, ShotStrategy strategy) {
    std::vector<long> out(branches, 0);
    if (strategy == ShotStrategy::Shared) {
        long per = budget / branches;
        long rem = budget % branches;
        for (int i = 0; i < branches; ++i) out[i] = per + (i < rem ? 1 : 0);
    } else {
        long per = static_cast<long>(std::floor(1.5 * static_cast<double>(budget)));
        for (int i = 0; i < branches; ++i) out[i] = per;
    }
    return out;
}

EstimateResult qpd_estimate(const Circuit& c, const CutSelection& cut, const Observable& o,
                            long budget, ShotStrategy strategy, const NoiseModel& noise,
                            std::uint64_t seed, bool exact_mode,
                            const std::vector<double>* ecr_equiv) {
    if (cut.gate_index < 0 || cut.gate_index >= static_cast<int>(c.gates.size()))
        throw std::invalid_argument("cut gate index out of range");
    const Gate& g = c.gates[cut.gate_index];
    auto branches = qpd_branches(g.kind, g.angle);

    std::vector<double> equiv;
    if (ecr_equiv) {
        equiv = *ecr_equiv;
        equiv[cut.gate_index] = 0.0;  // the cut gate's noise goes away with it
    }

    EstimateResult r;
    r.strategy = strategy_name(strategy);
    r.seed = seed;
    r.shots_used = exact_mode ? std::vector<long>(branches.size(), 0)
                              : allocate_shots(budget, static_cast<int>(branches.size()), strategy);

    for (std::size_t k = 0; k < branches.size(); ++k) {
        SubstitutedCircuit sub = substitute_branch(c, cut.gate_index, branches[k]);
        std::vector<int> sign_bits;
        if (sub.sign_clbit >= 0) sign_bits.push_back(sub.sign_clbit);

        std::vector<double> sub_equiv;
        const std::vector<double>* sub_equiv_ptr = nullptr;
        if (ecr_equiv) {
            // Replacement ops are 1q rotations or measurements: zero ECR weight.
            const std::size_t ops = sub.circuit.gates.size() - (c.gates.size() - 1);
            sub_equiv.reserve(sub.circuit.gates.size());
            for (std::size_t i = 0; i < c.gates.size(); ++i) {
                if (static_cast<int>(i) == cut.gate_index)
                    sub_equiv.insert(sub_equiv.end(), ops, 0.0);
                else
                    sub_equiv.push_back(equiv[i]);
            }
            sub_equiv_ptr = &sub_equiv;
        }

        double est;
        if (exact_mode) {
            est = exact_expectation(sub.circuit, o, noise, sub_equiv_ptr, sign_bits);
        } else {
            long m = r.shots_used[k];
            if (m == 0) {
                r.per_branch.push_back(0.0);
                continue;
            }
            est = sample_expectation(sub.circuit, o, m, noise, Rng::derive(seed, k).next_u64(),
                                     sub_equiv_ptr, sign_bits)
                      .value;
        }
        r.per_branch.push_back(est);
        r.value += branches[k].coeff * est;
    }
    return r;
}

}  // namespace twcut
