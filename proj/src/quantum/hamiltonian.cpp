#include "qcs/quantum/hamiltonian.hpp"

#include <stdexcept>

namespace qcs::quantum {

std::uint32_t PauliTerm::flip_mask() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < paulis.size(); ++i)
        if (paulis[i] == 'X' || paulis[i] == 'Y') mask |= 1u << i;
    return mask;
}

std::uint32_t PauliTerm::phase_mask() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < paulis.size(); ++i)
        if (paulis[i] == 'Z' || paulis[i] == 'Y') mask |= 1u << i;
    return mask;
}

int PauliTerm::y_count() const {
    int n = 0;
    for (char c : paulis) n += (c == 'Y');
    return n;
}

void PauliHamiltonian::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("hamiltonian qubit count out of range");
    for (const auto& t : terms) {
        if (static_cast<int>(t.paulis.size()) != num_qubits)
            throw std::invalid_argument("pauli string '" + t.paulis + "' has wrong length");
        for (char c : t.paulis)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw std::invalid_argument("bad pauli label in '" + t.paulis + "'");
    }
}

double PauliHamiltonian::coefficient_norm_squared() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.coefficient * t.coefficient;
    return s;
}

PauliHamiltonian operator+(const PauliHamiltonian& a, const PauliHamiltonian& b) {
    if (a.num_qubits != b.num_qubits) throw std::invalid_argument("qubit count mismatch in sum");
    PauliHamiltonian out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

PauliHamiltonian build_tfi(int num_qubits, double field_strength) {
    if (num_qubits < kMinQubits || num_qubits > kMaxQubits)
        throw std::invalid_argument("TFI qubit count must lie in [2, 16]");
    PauliHamiltonian h;
    h.num_qubits = num_qubits;
    const std::string identity(static_cast<std::size_t>(num_qubits), 'I');
    for (int i = 0; i + 1 < num_qubits; ++i) {
        std::string s = identity;
        s[i] = 'Z';
        s[i + 1] = 'Z';
        h.terms.push_back({-1.0, s});
    }
    for (int i = 0; i < num_qubits; ++i) {
        std::string s = identity;
        s[i] = 'X';
        h.terms.push_back({-field_strength, s});
    }
    return h;
}

}  // namespace qcs::quantum
