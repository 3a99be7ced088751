#include "twcut/density.hpp"

#include <cmath>
#include <stdexcept>

namespace twcut {

DensityMatrix::DensityMatrix(int n) : n_(n), dim_(std::size_t{1} << n), rho_(dim_ * dim_, cplx(0)) {
    rho_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_state(const StateVector& sv) {
    DensityMatrix dm(sv.num_qubits());
    const auto& a = sv.amplitudes();
    for (std::size_t r = 0; r < dm.dim_; ++r)
        for (std::size_t c = 0; c < dm.dim_; ++c) dm.rho_[r * dm.dim_ + c] = a[r] * std::conj(a[c]);
    return dm;
}

void DensityMatrix::apply_side(int q, const cplx m[4], bool left) {
    const std::size_t mask = std::size_t{1} << q;
    // Left: act on the row index for every fixed column; right: transpose roles.
#pragma omp parallel for schedule(static) if (n_ >= 7)
    for (std::size_t other = 0; other < dim_; ++other) {
        for (std::size_t base = 0; base < dim_; ++base) {
            if (base & mask) continue;
            std::size_t i0, i1;
            if (left) {
                i0 = base * dim_ + other;
                i1 = (base | mask) * dim_ + other;
            } else {
                i0 = other * dim_ + base;
                i1 = other * dim_ + (base | mask);
            }
            cplx a0 = rho_[i0], a1 = rho_[i1];
            rho_[i0] = m[0] * a0 + m[1] * a1;
            rho_[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

void DensityMatrix::apply_side2(int q0, int q1, const cplx m[16], bool left) {
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
#pragma omp parallel for schedule(static) if (n_ >= 7)
    for (std::size_t other = 0; other < dim_; ++other) {
        for (std::size_t base = 0; base < dim_; ++base) {
            if (base & (m0 | m1)) continue;
            std::size_t sub[4] = {base, base | m0, base | m1, base | m0 | m1};
            cplx v[4];
            for (int k = 0; k < 4; ++k)
                v[k] = left ? rho_[sub[k] * dim_ + other] : rho_[other * dim_ + sub[k]];
            for (int r = 0; r < 4; ++r) {
                cplx s = 0;
                for (int c = 0; c < 4; ++c) s += m[r * 4 + c] * v[c];
                if (left)
                    rho_[sub[r] * dim_ + other] = s;
                else
                    rho_[other * dim_ + sub[r]] = s;
            }
        }
    }
}

void DensityMatrix::apply(const Gate& g) {
    if (g.kind == GateKind::MEASURE || g.kind == GateKind::CONDX)
        throw std::invalid_argument("measurement handled by the executor");
    auto m = gate_matrix(g);
    std::vector<cplx> mc(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) mc[i] = std::conj(m[i]);
    if (is_two_qubit(g.kind)) {
        apply_side2(g.q0, g.q1, m.data(), true);
        apply_side2(g.q0, g.q1, mc.data(), false);
    } else {
        apply_side(g.q0, m.data(), true);
        apply_side(g.q0, mc.data(), false);
    }
}

void DensityMatrix::depolarize2(int q0, int q1, double p) {
    if (p <= 0.0) return;
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
    const std::size_t pair = m0 | m1;
#pragma omp parallel for schedule(static) if (n_ >= 7)
    for (std::size_t rb = 0; rb < dim_; ++rb) {
        if (rb & pair) continue;
        for (std::size_t cb = 0; cb < dim_; ++cb) {
            if (cb & pair) continue;
            std::size_t rsub[4] = {rb, rb | m0, rb | m1, rb | pair};
            std::size_t csub[4] = {cb, cb | m0, cb | m1, cb | pair};
            cplx tr = 0;
            for (int k = 0; k < 4; ++k) tr += rho_[rsub[k] * dim_ + csub[k]];
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    cplx& v = rho_[rsub[r] * dim_ + csub[c]];
                    v *= (1.0 - p);
                    if (r == c) v += p * tr / 4.0;
                }
        }
    }
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += rho_[i * dim_ + i].real();
    return t;
}

double DensityMatrix::prob_one(int q) const {
    const std::size_t mask = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        if (i & mask) p += rho_[i * dim_ + i].real();
    return p;
}

double DensityMatrix::project(int q, int outcome) {
    double p1 = prob_one(q);
    double p = outcome == 1 ? p1 : 1.0 - p1;
    if (p <= 0.0) return 0.0;
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t want = outcome == 1 ? mask : 0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) {
            if ((r & mask) == want && (c & mask) == want)
                rho_[r * dim_ + c] /= p;
            else
                rho_[r * dim_ + c] = 0;
        }
    return p;
}

double DensityMatrix::expectation(const PauliTerm& term) const {
    if (static_cast<int>(term.paulis.size()) != n_)
        throw std::invalid_argument("pauli string width mismatch");
    std::size_t xmask = 0, zmask = 0, ymask = 0;
    for (int q = 0; q < n_; ++q) {
        char p = term.paulis[q];
        if (p == 'X') xmask |= std::size_t{1} << q;
        if (p == 'Y') {
            xmask |= std::size_t{1} << q;
            ymask |= std::size_t{1} << q;
        }
        if (p == 'Z') zmask |= std::size_t{1} << q;
    }
    const int ybits = static_cast<int>(ymask == 0 ? 0 : __builtin_popcountll(ymask));
    // Tr[P rho] = sum_z P[z, z^x] rho[z^x, z]
    cplx total = 0;
    for (std::size_t z = 0; z < dim_; ++z) {
        int zsigns = __builtin_popcountll(z & zmask) + __builtin_popcountll(z & ymask);
        double sgn = (zsigns & 1) ? -1.0 : 1.0;
        cplx phase(1.0, 0.0);  // (-i)^(#Y)
        switch (ybits & 3) {
            case 1: phase = cplx(0.0, -1.0); break;
            case 2: phase = cplx(-1.0, 0.0); break;
            case 3: phase = cplx(0.0, 1.0); break;
            default: break;
        }
        total += sgn * phase * rho_[(z ^ xmask) * dim_ + z];
    }
    return term.coeff * total.real();
}

double DensityMatrix::expectation(const Observable& o) const {
    double total = 0.0;
    for (const auto& t : o.terms) total += expectation(t);
    return total;
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = rho_[i * dim_ + i].real();
    return d;
}

}  // namespace twcut
