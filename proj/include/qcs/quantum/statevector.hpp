#pragma once

#include <span>
#include <vector>

#include "qcs/quantum/hamiltonian.hpp"

namespace qcs::quantum {

// Hardware-efficient ansatz: each layer applies RY(theta) to every qubit, then CZ on
// every neighbouring pair (q, q+1). Parameters are layer-major: index = layer * n + q.
//
// Depth convention: one rotation sublayer plus the n-1 CZ gates packed into two
// alternating sublayers (even pairs, odd pairs), so depth = 3 * num_layers.
struct AnsatzSpec {
    int num_qubits = 2;
    int num_layers = 1;

    [[nodiscard]] int parameter_count() const { return num_qubits * num_layers; }
    [[nodiscard]] int depth() const { return 3 * num_layers; }
};

// RY and CZ keep amplitudes real, so the state is stored as real doubles.
class RealStatevector {
public:
    explicit RealStatevector(int num_qubits);

    void reset();
    void apply_ry(int qubit, double angle);
    // RY on `qubit` and `qubit + 1` in one sweep over the amplitudes.
    void apply_ry_pair(int qubit, double angle_lo, double angle_hi);
    void apply_diagonal_signs(std::span<const double> signs);
    [[nodiscard]] double expectation(const PauliTerm& term) const;
    [[nodiscard]] double expectation(const PauliHamiltonian& h) const;

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::span<const double> amplitudes() const { return amps_; }

private:
    int num_qubits_;
    std::vector<double> amps_;
};

// (+1/-1) per basis state for the full linear CZ chain.
std::vector<double> cz_chain_signs(int num_qubits);

void prepare_ansatz_state(RealStatevector& state, const AnsatzSpec& ansatz,
                          std::span<const double> params, std::span<const double> cz_signs);

}  // namespace qcs::quantum
