#include "twcut/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twcut {

bool is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::RZZ:
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::SWAP: return true;
        default: return false;
    }
}

bool has_angle(GateKind k) {
    return k == GateKind::RX || k == GateKind::RZ || k == GateKind::RZZ;
}

bool uses_clbit(GateKind k) { return k == GateKind::MEASURE || k == GateKind::CONDX; }

const char* mnemonic(GateKind k) {
    switch (k) {
        case GateKind::RX: return "rx";
        case GateKind::RZ: return "rz";
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::SX: return "sx";
        case GateKind::RZZ: return "rzz";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::SWAP: return "swap";
        case GateKind::MEASURE: return "measure";
        case GateKind::CONDX: return "condx";
    }
    return "?";
}

int Circuit::num_two_qubit() const {
    int c = 0;
    for (const auto& g : gates) c += is_two_qubit(g.kind) ? 1 : 0;
    return c;
}

void Circuit::validate() const {
    std::vector<bool> written(static_cast<std::size_t>(n_clbits), false);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("gate " + std::to_string(i) + ": " + msg);
        };
        if (g.q0 < 0 || g.q0 >= n_qubits) fail("qubit index out of range");
        if (is_two_qubit(g.kind)) {
            if (g.q1 < 0 || g.q1 >= n_qubits) fail("qubit index out of range");
            if (g.q0 == g.q1) fail("2q operands must be distinct");
        }
        if (uses_clbit(g.kind)) {
            if (g.clbit < 0 || g.clbit >= n_clbits) fail("classical index out of range");
            if (g.kind == GateKind::CONDX && !written[g.clbit])
                fail("condx reads an unwritten classical bit");
            if (g.kind == GateKind::MEASURE) written[g.clbit] = true;
        }
    }
}

Circuit circuit_from_graph(const UGraph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");
    Circuit c(g.num_nodes());
    for (const auto& [u, v] : g.edges()) c.add(Gate::cx(u, v));
    return c;
}

std::vector<Edge> tfim_j1_edges(const TfimSpec& spec) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < spec.n; ++i) e.push_back({i, i + 1});
    if (spec.topology == TfimTopology::J1J2Ring) e.push_back({0, spec.n - 1});
    std::sort(e.begin(), e.end());
    return e;
}

std::vector<Edge> tfim_j2_edges(const TfimSpec& spec) {
    std::vector<Edge> e;
    if (spec.topology == TfimTopology::J1J2Ring)
        for (int i = 0; i + 2 < spec.n; ++i) e.push_back({i, i + 2});
    return e;
}

Circuit build_tfim(const TfimSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("n must be >= 2");
    if (spec.trotter_steps < 1) throw std::invalid_argument("trotter_steps must be >= 1");
    if (spec.topology == TfimTopology::J1J2Ring && spec.n < 5)
        throw std::invalid_argument("j1j2_ring requires n >= 5");

    Circuit c(spec.n);
    c.name = "tfim";
    for (int q = 0; q < spec.n; ++q) c.add(Gate::h(q));

    const auto j1 = tfim_j1_edges(spec);
    const auto j2 = tfim_j2_edges(spec);
    const double j2_angle = spec.j1 != 0.0 ? spec.rzz_angle * spec.j2 / spec.j1 : 0.0;
    const double rx_angle = 2.0 * spec.h * spec.dt_x;
    for (int t = 0; t < spec.trotter_steps; ++t) {
        for (const auto& [a, b] : j1) c.add(Gate::rzz(a, b, spec.rzz_angle));
        for (const auto& [a, b] : j2) c.add(Gate::rzz(a, b, j2_angle));
        for (int q = 0; q < spec.n; ++q) c.add(Gate::rx(q, rx_angle));
    }
    return c;
}

namespace {

std::string format_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

}  // namespace

std::string emit_circuit(const Circuit& c) {
    std::ostringstream os;
    os << "qubits " << c.n_qubits << "\n";
    if (c.n_clbits > 0) os << "clbits " << c.n_clbits << "\n";
    for (const auto& g : c.gates) {
        os << mnemonic(g.kind) << " " << g.q0;
        if (is_two_qubit(g.kind)) os << " " << g.q1;
        if (uses_clbit(g.kind)) os << " " << g.clbit;
        if (has_angle(g.kind)) os << " " << format_angle(g.angle);
        os << "\n";
    }
    return os.str();
}

Circuit parse_circuit(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    Circuit c;
    bool have_qubits = false;

    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char ch) { return std::tolower(ch); });

        auto need_int = [&](const char* what) {
            long v;
            if (!(ls >> v)) throw CircuitParseError(line_no, std::string("expected ") + what);
            return static_cast<int>(v);
        };
        auto need_angle = [&]() {
            double v;
            if (!(ls >> v)) throw CircuitParseError(line_no, "expected angle");
            return v;
        };
        auto check_done = [&]() {
            std::string extra;
            if (ls >> extra) throw CircuitParseError(line_no, "trailing tokens");
        };
        auto check_q = [&](int q) {
            if (q < 0 || q >= c.n_qubits) throw CircuitParseError(line_no, "qubit index out of range");
        };
        auto check_c = [&](int b) {
            if (b < 0 || b >= c.n_clbits)
                throw CircuitParseError(line_no, "classical index out of range");
        };

        if (word == "qubits") {
            c.n_qubits = need_int("qubit count");
            check_done();
            if (c.n_qubits < 0) throw CircuitParseError(line_no, "negative qubit count");
            have_qubits = true;
            continue;
        }
        if (word == "clbits") {
            c.n_clbits = need_int("clbit count");
            check_done();
            if (c.n_clbits < 0) throw CircuitParseError(line_no, "negative clbit count");
            continue;
        }
        if (!have_qubits) throw CircuitParseError(line_no, "missing qubits header");

        Gate g{};
        if (word == "rx" || word == "rz") {
            g.kind = word == "rx" ? GateKind::RX : GateKind::RZ;
            g.q0 = need_int("qubit");
            g.angle = need_angle();
            check_q(g.q0);
        } else if (word == "h" || word == "x" || word == "sx") {
            g.kind = word == "h" ? GateKind::H : (word == "x" ? GateKind::X : GateKind::SX);
            g.q0 = need_int("qubit");
            check_q(g.q0);
        } else if (word == "rzz") {
            g.kind = GateKind::RZZ;
            g.q0 = need_int("qubit");
            g.q1 = need_int("qubit");
            g.angle = need_angle();
            check_q(g.q0);
            check_q(g.q1);
            if (g.q0 == g.q1) throw CircuitParseError(line_no, "2q operands must be distinct");
        } else if (word == "cx" || word == "cz" || word == "swap") {
            g.kind = word == "cx" ? GateKind::CX : (word == "cz" ? GateKind::CZ : GateKind::SWAP);
            g.q0 = need_int("qubit");
            g.q1 = need_int("qubit");
            check_q(g.q0);
            check_q(g.q1);
            if (g.q0 == g.q1) throw CircuitParseError(line_no, "2q operands must be distinct");
        } else if (word == "measure" || word == "condx") {
            g.kind = word == "measure" ? GateKind::MEASURE : GateKind::CONDX;
            g.q0 = need_int("qubit");
            g.clbit = need_int("clbit");
            check_q(g.q0);
            check_c(g.clbit);
        } else {
            throw CircuitParseError(line_no, "unknown mnemonic '" + word + "'");
        }
        check_done();
        c.add(g);
    }
    if (!have_qubits) throw CircuitParseError(line_no == 0 ? 1 : line_no, "missing qubits header");
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw CircuitParseError(line_no, e.what());
    }
    return c;
}

Circuit read_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_circuit(os.str());
}

void write_circuit_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << emit_circuit(c);
}

std::vector<int> circuit_layers(const Circuit& c) {
    std::vector<int> qubit_layer(static_cast<std::size_t>(c.n_qubits), -1);
    std::vector<int> layers(c.gates.size(), 0);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        int prev = qubit_layer[g.q0];
        if (is_two_qubit(g.kind)) prev = std::max(prev, qubit_layer[g.q1]);
        int layer = prev + 1;
        layers[i] = layer;
        qubit_layer[g.q0] = layer;
        if (is_two_qubit(g.kind)) qubit_layer[g.q1] = layer;
    }
    return layers;
}

int layer_index(const Circuit& c, int gate_position) {
    if (gate_position < 0 || gate_position >= static_cast<int>(c.gates.size()))
        throw std::invalid_argument("gate position out of range");
    return circuit_layers(c)[gate_position];
}

}  // namespace twcut
