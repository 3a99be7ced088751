#include "twcut/qpd.hpp"

#include <cmath>
#include <stdexcept>

#include "twcut/statevector.hpp"

namespace twcut {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.5707963267948966;

using Mat4 = std::array<std::complex<double>, 16>;

Mat4 embed(const std::vector<cplx>& u2, int side) {
    // Pair basis index b = (bit of q1 << 1) | bit of q0; side 0 acts on bit 0.
    Mat4 m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            int rb0 = r & 1, rb1 = r >> 1, cb0 = c & 1, cb1 = c >> 1;
            if (side == 0)
                m[r * 4 + c] = (rb1 == cb1) ? u2[rb0 * 2 + cb0] : cplx(0);
            else
                m[r * 4 + c] = (rb0 == cb0) ? u2[rb1 * 2 + cb1] : cplx(0);
        }
    return m;
}

Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            cplx s = 0;
            for (int k = 0; k < 4; ++k) s += a[r * 4 + k] * b[k * 4 + c];
            out[r * 4 + c] = s;
        }
    return out;
}

Mat4 dagger(const Mat4& a) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r * 4 + c] = std::conj(a[c * 4 + r]);
    return out;
}

Mat4 conjugate(const Mat4& u, const Mat4& e) { return mul(mul(u, e), dagger(u)); }

// Branch superoperator applied to one operator-basis element.
Mat4 apply_branch(const QpdBranch& branch, const Mat4& input) {
    Mat4 e = input;
    for (const auto& op : branch.ops) {
        if (op.kind == GateKind::MEASURE) {
            std::vector<cplx> p0 = {1, 0, 0, 0}, p1 = {0, 0, 0, 1};
            Mat4 pr0 = embed(p0, op.q0), pr1 = embed(p1, op.q0);
            Mat4 kept = mul(mul(pr0, e), pr0);
            Mat4 flipped = mul(mul(pr1, e), pr1);
            bool sign = op.q0 == branch.sign_qubit;
            for (int i = 0; i < 16; ++i) e[i] = kept[i] + (sign ? -flipped[i] : flipped[i]);
        } else {
            Gate local = op;
            local.q0 = 0;  // matrix only depends on kind/angle
            e = conjugate(embed(gate_matrix(local), op.q0), e);
        }
    }
    return e;
}

Choi choi_of_channel(const std::vector<QpdBranch>& branches) {
    Choi choi{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Mat4 basis{};
            basis[i * 4 + j] = 1.0;
            Mat4 out{};
            for (const auto& b : branches) {
                Mat4 r = apply_branch(b, basis);
                for (int k = 0; k < 16; ++k) out[k] += b.coeff * r[k];
            }
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) choi[(i * 4 + r) * 16 + (j * 4 + c)] = out[r * 4 + c];
        }
    return choi;
}

std::vector<QpdBranch> rzz_branches(double theta) {
    const double half = theta / 2.0;
    const double c2 = std::cos(half) * std::cos(half);
    const double s2 = std::sin(half) * std::sin(half);
    const double cross = std::sin(theta) / 2.0;

    std::vector<QpdBranch> b(6);
    b[0] = {c2, {}, -1};
    b[1] = {s2, {Gate::rz(0, kPi), Gate::rz(1, kPi)}, -1};
    b[2] = {cross, {Gate::measure(0, 0), Gate::rz(1, kHalfPi)}, 0};
    b[3] = {-cross, {Gate::measure(0, 0), Gate::rz(1, -kHalfPi)}, 0};
    b[4] = {cross, {Gate::rz(0, kHalfPi), Gate::measure(1, 0)}, 1};
    b[5] = {-cross, {Gate::rz(0, -kHalfPi), Gate::measure(1, 0)}, 1};
    return b;
}

std::vector<QpdBranch> cz_branches() {
    std::vector<QpdBranch> b(6);
    b[0] = {0.5, {Gate::rz(0, kHalfPi), Gate::rz(1, kHalfPi)}, -1};
    b[1] = {0.5, {Gate::rz(0, -kHalfPi), Gate::rz(1, -kHalfPi)}, -1};
    b[2] = {-0.5, {Gate::measure(0, 0), Gate::rz(1, kPi)}, 0};
    b[3] = {0.5, {Gate::measure(0, 0)}, 0};
    b[4] = {-0.5, {Gate::rz(0, kPi), Gate::measure(1, 0)}, 1};
    b[5] = {0.5, {Gate::measure(1, 0)}, 1};
    return b;
}

std::vector<QpdBranch> cx_branches() {
    // CZ branches with the target-side ops conjugated by H.
    std::vector<QpdBranch> b(6);
    b[0] = {0.5, {Gate::rz(0, kHalfPi), Gate::rx(1, kHalfPi)}, -1};
    b[1] = {0.5, {Gate::rz(0, -kHalfPi), Gate::rx(1, -kHalfPi)}, -1};
    b[2] = {-0.5, {Gate::measure(0, 0), Gate::x(1)}, 0};
    b[3] = {0.5, {Gate::measure(0, 0)}, 0};
    b[4] = {-0.5, {Gate::rz(0, kPi), Gate::h(1), Gate::measure(1, 0), Gate::h(1)}, 1};
    b[5] = {0.5, {Gate::h(1), Gate::measure(1, 0), Gate::h(1)}, 1};
    return b;
}

}  // namespace

Choi choi_of_gate(GateKind kind, double angle) {
    Gate g{kind, 0, 1, angle, -1};
    auto m = gate_matrix(g);
    Mat4 u{};
    for (int k = 0; k < 16; ++k) u[k] = m[k];
    Choi choi{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Mat4 basis{};
            basis[i * 4 + j] = 1.0;
            Mat4 out = conjugate(u, basis);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) choi[(i * 4 + r) * 16 + (j * 4 + c)] = out[r * 4 + c];
        }
    return choi;
}

Choi choi_of_branches(const std::vector<QpdBranch>& branches) { return choi_of_channel(branches); }

double choi_distance(const Choi& a, const Choi& b) {
    double s = 0.0;
    for (int i = 0; i < 256; ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

double qpd_gamma(const std::vector<QpdBranch>& branches) {
    double g = 0.0;
    for (const auto& b : branches) g += std::abs(b.coeff);
    return g;
}

std::vector<QpdBranch> qpd_branches(GateKind kind, double angle) {
    std::vector<QpdBranch> branches;
    switch (kind) {
        case GateKind::CX: branches = cx_branches(); break;
        case GateKind::CZ: branches = cz_branches(); break;
        case GateKind::RZZ: branches = rzz_branches(angle); break;
        default: throw std::invalid_argument("unsupported gate kind for QPD");
    }
    double err = choi_distance(choi_of_branches(branches), choi_of_gate(kind, angle));
    if (err > 1e-12)
        throw std::logic_error("QPD branch construction failed the Choi identity");
    return branches;
}

SubstitutedCircuit substitute_branch(const Circuit& c, int gate_index, const QpdBranch& branch) {
    if (gate_index < 0 || gate_index >= static_cast<int>(c.gates.size()))
        throw std::invalid_argument("gate index out of range");
    const Gate& cut = c.gates[gate_index];
    if (!is_two_qubit(cut.kind)) throw std::invalid_argument("cut gate must be two-qubit");

    SubstitutedCircuit out;
    out.circuit = Circuit(c.n_qubits, c.n_clbits);
    out.circuit.name = c.name;
    bool measures = false;
    for (const auto& op : branch.ops) measures |= op.kind == GateKind::MEASURE;
    int clbit = -1;
    if (measures) {
        clbit = out.circuit.n_clbits;
        out.circuit.n_clbits += 1;
        out.sign_clbit = clbit;
    }
    const int side_qubit[2] = {cut.q0, cut.q1};
    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
        if (i != gate_index) {
            out.circuit.add(c.gates[i]);
            continue;
        }
        for (const auto& op : branch.ops) {
            Gate g = op;
            g.q0 = side_qubit[op.q0];
            if (op.kind == GateKind::MEASURE) g.clbit = clbit;
            out.circuit.add(g);
        }
    }
    return out;
}

}  // namespace twcut
