#include "twcut/pauli.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twcut {

int PauliTerm::support() const {
    int s = 0;
    for (char ch : paulis) s += ch != 'I' ? 1 : 0;
    return s;
}

void Observable::add(double coeff, const std::string& paulis) {
    if (static_cast<int>(paulis.size()) != n_qubits)
        throw std::invalid_argument("pauli string length must equal qubit count");
    for (char ch : paulis)
        if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
            throw std::invalid_argument("pauli letters must be I/X/Y/Z");
    terms.push_back({coeff, paulis});
}

Observable parse_observable(const std::string& text, int n_qubits) {
    Observable o;
    o.n_qubits = n_qubits;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double coeff;
        std::string paulis;
        if (!(ls >> coeff)) continue;  // blank line
        if (!(ls >> paulis))
            throw std::runtime_error("observable line " + std::to_string(line_no) +
                                     ": missing pauli string");
        for (auto& ch : paulis) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        try {
            o.add(coeff, paulis);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("observable line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return o;
}

std::string emit_observable(const Observable& o) {
    std::ostringstream os;
    for (const auto& t : o.terms) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", t.coeff);
        os << buf << " " << t.paulis << "\n";
    }
    return os.str();
}

Observable read_observable_file(const std::string& path, int n_qubits) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_observable(os.str(), n_qubits);
}

Observable tfim_observable(const TfimSpec& spec) {
    Observable o;
    o.n_qubits = spec.n;
    auto zz = [&](const Edge& e, double coeff) {
        std::string p(spec.n, 'I');
        p[e.first] = 'Z';
        p[e.second] = 'Z';
        o.add(coeff, p);
    };
    for (const auto& e : tfim_j1_edges(spec)) zz(e, spec.j1);
    for (const auto& e : tfim_j2_edges(spec)) zz(e, spec.j2);
    for (int q = 0; q < spec.n; ++q) {
        std::string p(spec.n, 'I');
        p[q] = 'X';
        o.add(spec.h, p);
    }
    return o;
}

std::vector<MeasurementGroup> group_observable(const Observable& o) {
    std::vector<MeasurementGroup> groups;
    for (int t = 0; t < static_cast<int>(o.terms.size()); ++t) {
        const auto& term = o.terms[t];
        bool placed = false;
        for (auto& g : groups) {
            bool ok = true;
            for (int q = 0; q < o.n_qubits && ok; ++q) {
                char a = g.basis[q], b = term.paulis[q];
                if (a != 'I' && b != 'I' && a != b) ok = false;
            }
            if (!ok) continue;
            for (int q = 0; q < o.n_qubits; ++q)
                if (term.paulis[q] != 'I') g.basis[q] = term.paulis[q];
            g.term_ids.push_back(t);
            placed = true;
            break;
        }
        if (!placed) {
            MeasurementGroup g;
            g.basis = term.paulis;
            g.term_ids = {t};
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

std::vector<Gate> basis_rotation(const std::string& basis) {
    std::vector<Gate> gates;
    for (int q = 0; q < static_cast<int>(basis.size()); ++q) {
        if (basis[q] == 'X') {
            gates.push_back(Gate::h(q));
        } else if (basis[q] == 'Y') {
            gates.push_back(Gate::rz(q, -1.5707963267948966));
            gates.push_back(Gate::h(q));
        }
    }
    return gates;
}

}  // namespace twcut
