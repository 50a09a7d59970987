#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcs::quantum {

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 16;

// A weighted Pauli string. Character i of `paulis` acts on qubit i, which is bit i
// of a computational-basis index.
struct PauliTerm {
    double coefficient = 0.0;
    std::string paulis;

    [[nodiscard]] std::uint32_t flip_mask() const;   // X or Y positions
    [[nodiscard]] std::uint32_t phase_mask() const;  // Z or Y positions
    [[nodiscard]] int y_count() const;
};

struct PauliHamiltonian {
    int num_qubits = 0;
    std::vector<PauliTerm> terms;

    // Throws std::invalid_argument on length or label mismatch.
    void validate() const;
    [[nodiscard]] double coefficient_norm_squared() const;
};

PauliHamiltonian operator+(const PauliHamiltonian& a, const PauliHamiltonian& b);

// Open transverse-field Ising chain: -sum Z_i Z_{i+1} - h sum X_i.
PauliHamiltonian build_tfi(int num_qubits, double field_strength);

}  // namespace qcs::quantum
