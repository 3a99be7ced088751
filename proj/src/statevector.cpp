#include "twcut/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace twcut {

namespace {

constexpr int kParQubits = 14;  // below this, OpenMP overhead dominates

// Fixed chunking keeps float accumulation order independent of the schedule.
template <typename F>
double deterministic_sum(std::size_t count, F&& f) {
    const std::size_t chunks = 256;
    const std::size_t step = (count + chunks - 1) / chunks;
    std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static) if (count >= (1u << kParQubits))
    for (std::size_t ci = 0; ci < chunks; ++ci) {
        double s = 0.0;
        const std::size_t lo = ci * step;
        const std::size_t hi = std::min(count, lo + step);
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[ci] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

}  // namespace

std::vector<cplx> gate_matrix(const Gate& g) {
    const cplx i01(0.0, 1.0);
    switch (g.kind) {
        case GateKind::RX: {
            double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            return {c, -i01 * s, -i01 * s, c};
        }
        case GateKind::RZ: {
            cplx em = std::exp(-i01 * (g.angle / 2)), ep = std::exp(i01 * (g.angle / 2));
            return {em, 0, 0, ep};
        }
        case GateKind::H: {
            double r = 1.0 / std::sqrt(2.0);
            return {r, r, r, -r};
        }
        case GateKind::X: return {0, 1, 1, 0};
        case GateKind::SX: {
            cplx a(0.5, 0.5), b(0.5, -0.5);
            return {a, b, b, a};
        }
        case GateKind::RZZ: {
            cplx em = std::exp(-i01 * (g.angle / 2)), ep = std::exp(i01 * (g.angle / 2));
            // pair index = (bit of q1 << 1) | bit of q0
            std::vector<cplx> m(16, 0);
            m[0 * 4 + 0] = em;
            m[1 * 4 + 1] = ep;
            m[2 * 4 + 2] = ep;
            m[3 * 4 + 3] = em;
            return m;
        }
        case GateKind::CX: {
            std::vector<cplx> m(16, 0);
            m[0 * 4 + 0] = 1;  // c=0,t=0
            m[2 * 4 + 2] = 1;  // c=0,t=1
            m[3 * 4 + 1] = 1;  // c=1,t=0 -> t=1
            m[1 * 4 + 3] = 1;  // c=1,t=1 -> t=0
            return m;
        }
        case GateKind::CZ: {
            std::vector<cplx> m(16, 0);
            m[0] = m[5] = m[10] = 1;
            m[15] = -1;
            return m;
        }
        case GateKind::SWAP: {
            std::vector<cplx> m(16, 0);
            m[0 * 4 + 0] = 1;
            m[2 * 4 + 1] = 1;
            m[1 * 4 + 2] = 1;
            m[3 * 4 + 3] = 1;
            return m;
        }
        default: throw std::invalid_argument("gate has no unitary matrix");
    }
}

StateVector::StateVector(int n) : n_(n), amp_(std::size_t{1} << n, cplx(0.0, 0.0)) {
    amp_[0] = 1.0;
}

void StateVector::apply1(int q, const cplx m[4]) {
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const std::size_t half = amp_.size() >> 1;
    cplx* a = amp_.data();
#pragma omp parallel for schedule(static) if (n_ >= kParQubits)
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        std::size_t i1 = i0 | mask;
        cplx a0 = a[i0], a1 = a[i1];
        a[i0] = m[0] * a0 + m[1] * a1;
        a[i1] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply2(int q0, int q1, const cplx m[16]) {
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
    const int qa = std::min(q0, q1), qb = std::max(q0, q1);
    const std::size_t lo = (std::size_t{1} << qa) - 1;
    const std::size_t mid = ((std::size_t{1} << (qb - 1)) - 1) & ~lo;
    const std::size_t hi = ~(lo | mid);
    const std::size_t quarter = amp_.size() >> 2;
    cplx* a = amp_.data();
#pragma omp parallel for schedule(static) if (n_ >= kParQubits)
    for (std::size_t i = 0; i < quarter; ++i) {
        std::size_t base = ((i & hi) << 2) | ((i & mid) << 1) | (i & lo);
        std::size_t idx[4] = {base, base | m0, base | m1, base | m0 | m1};
        cplx v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            cplx s = 0;
            for (int col = 0; col < 4; ++col) s += m[r * 4 + col] * v[col];
            a[idx[r]] = s;
        }
    }
}

void StateVector::apply(const Gate& g) {
    if (g.kind == GateKind::MEASURE || g.kind == GateKind::CONDX)
        throw std::invalid_argument("measurement handled by the executor");
    auto m = gate_matrix(g);
    if (is_two_qubit(g.kind))
        apply2(g.q0, g.q1, m.data());
    else
        apply1(g.q0, m.data());
}

double StateVector::norm2() const {
    const cplx* a = amp_.data();
    return deterministic_sum(amp_.size(), [a](std::size_t i) { return std::norm(a[i]); });
}

double StateVector::prob_one(int q) const {
    const std::size_t mask = std::size_t{1} << q;
    const cplx* a = amp_.data();
    return deterministic_sum(amp_.size(),
                             [a, mask](std::size_t i) { return (i & mask) ? std::norm(a[i]) : 0.0; });
}

double StateVector::project(int q, int outcome) {
    double p1 = prob_one(q);
    double p = outcome == 1 ? p1 : 1.0 - p1;
    if (p <= 0.0) return 0.0;
    const std::size_t mask = std::size_t{1} << q;
    const double scale = 1.0 / std::sqrt(p);
    const std::size_t want = outcome == 1 ? mask : 0;
    cplx* a = amp_.data();
#pragma omp parallel for schedule(static) if (n_ >= kParQubits)
    for (std::size_t i = 0; i < amp_.size(); ++i) a[i] = (i & mask) == want ? a[i] * scale : cplx(0);
    return p;
}

void StateVector::permute(const std::vector<int>& perm) {
    std::vector<cplx> out(amp_.size(), cplx(0));
    for (std::size_t z = 0; z < amp_.size(); ++z) {
        std::size_t nz = 0;
        for (int q = 0; q < n_; ++q)
            if (z >> q & 1) nz |= std::size_t{1} << perm[q];
        out[nz] = amp_[z];
    }
    amp_ = std::move(out);
}

double StateVector::expectation(const PauliTerm& term) const {
    if (static_cast<int>(term.paulis.size()) != n_)
        throw std::invalid_argument("pauli string width mismatch");
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    std::size_t ymask = 0;
    for (int q = 0; q < n_; ++q) {
        char p = term.paulis[q];
        if (p == 'X') xmask |= std::size_t{1} << q;
        if (p == 'Y') {
            xmask |= std::size_t{1} << q;
            ymask |= std::size_t{1} << q;
        }
        if (p == 'Z') zmask |= std::size_t{1} << q;
    }
    const cplx* a = amp_.data();
    const int ybits = static_cast<int>(ymask == 0 ? 0 : __builtin_popcountll(ymask));
    // Y phase: factor (-i)^(#Y) * (-1)^(set Y bits of z), folded with Z signs.
    double re = deterministic_sum(amp_.size(), [&](std::size_t z) {
        cplx v = std::conj(a[z]) * a[z ^ xmask];
        int zsigns = __builtin_popcountll(z & zmask) + __builtin_popcountll(z & ymask);
        double sgn = (zsigns & 1) ? -1.0 : 1.0;
        cplx phase(1.0, 0.0);  // (-i)^(#Y)
        switch (ybits & 3) {
            case 1: phase = cplx(0.0, -1.0); break;
            case 2: phase = cplx(-1.0, 0.0); break;
            case 3: phase = cplx(0.0, 1.0); break;
            default: break;
        }
        return (v * sgn * phase).real();
    });
    return term.coeff * re;
}

double StateVector::expectation(const Observable& o) const {
    double total = 0.0;
    for (const auto& t : o.terms) total += expectation(t);
    return total;
}

cplx StateVector::inner(const StateVector& other) const {
    cplx s = 0;
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
}

namespace refsim {

void apply_gate_dense(std::vector<cplx>& amp, int n, const Gate& g) {
    const std::size_t dim = std::size_t{1} << n;
    auto m = gate_matrix(g);
    std::vector<cplx> full(dim * dim, cplx(0));
    if (!is_two_qubit(g.kind)) {
        const std::size_t mask = std::size_t{1} << g.q0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) {
                if ((r & ~mask) != (c & ~mask)) continue;
                int rb = (r & mask) ? 1 : 0, cb = (c & mask) ? 1 : 0;
                full[r * dim + c] = m[rb * 2 + cb];
            }
    } else {
        const std::size_t m0 = std::size_t{1} << g.q0;
        const std::size_t m1 = std::size_t{1} << g.q1;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) {
                if ((r & ~(m0 | m1)) != (c & ~(m0 | m1))) continue;
                int rp = ((r & m1) ? 2 : 0) | ((r & m0) ? 1 : 0);
                int cp = ((c & m1) ? 2 : 0) | ((c & m0) ? 1 : 0);
                full[r * dim + c] = m[rp * 4 + cp];
            }
    }
    std::vector<cplx> out(dim, cplx(0));
    for (std::size_t r = 0; r < dim; ++r) {
        cplx s = 0;
        for (std::size_t c = 0; c < dim; ++c) s += full[r * dim + c] * amp[c];
        out[r] = s;
    }
    amp = std::move(out);
}

}  // namespace refsim

}  // namespace twcut
