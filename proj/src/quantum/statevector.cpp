#include "qcs/quantum/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qcs::quantum {

RealStatevector::RealStatevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("statevector qubit count out of range");
    amps_.assign(std::size_t{1} << num_qubits, 0.0);
    amps_[0] = 1.0;
}

void RealStatevector::reset() {
    std::fill(amps_.begin(), amps_.end(), 0.0);
    amps_[0] = 1.0;
}

void RealStatevector::apply_ry(int qubit, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = amps_.size();
    double* a = amps_.data();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const double lo = a[i];
            const double hi = a[i + stride];
            a[i] = c * lo - s * hi;
            a[i + stride] = s * lo + c * hi;
        }
    }
}

void RealStatevector::apply_diagonal_signs(std::span<const double> signs) {
    if (signs.size() != amps_.size()) throw std::invalid_argument("diagonal size mismatch");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= signs[i];
}

void RealStatevector::apply_ry_pair(int qubit, double angle_lo, double angle_hi) {
    const double c0 = std::cos(0.5 * angle_lo), s0 = std::sin(0.5 * angle_lo);
    const double c1 = std::cos(0.5 * angle_hi), s1 = std::sin(0.5 * angle_hi);
    const std::size_t s = std::size_t{1} << qubit;
    const std::size_t dim = amps_.size();
    double* a = amps_.data();
    for (std::size_t base = 0; base < dim; base += 4 * s) {
        for (std::size_t i = base; i < base + s; ++i) {
            const double v0 = a[i], v1 = a[i + s], v2 = a[i + 2 * s], v3 = a[i + 3 * s];
            const double w0 = c0 * v0 - s0 * v1, w1 = s0 * v0 + c0 * v1;
            const double w2 = c0 * v2 - s0 * v3, w3 = s0 * v2 + c0 * v3;
            a[i] = c1 * w0 - s1 * w2;
            a[i + 2 * s] = s1 * w0 + c1 * w2;
            a[i + s] = c1 * w1 - s1 * w3;
            a[i + 3 * s] = s1 * w1 + c1 * w3;
        }
    }
}

namespace {

// Parity of every 16-bit value; basis indices never exceed 16 bits.
const std::vector<unsigned char>& parity_table() {
    static const std::vector<unsigned char> table = [] {
        std::vector<unsigned char> t(std::size_t{1} << kMaxQubits);
        for (std::size_t x = 1; x < t.size(); ++x) t[x] = t[x >> 1] ^ static_cast<unsigned char>(x & 1);
        return t;
    }();
    return table;
}

}  // namespace

double RealStatevector::expectation(const PauliTerm& term) const {
    if (static_cast<int>(term.paulis.size()) != num_qubits_)
        throw std::invalid_argument("pauli term length mismatch");
    // P|x> = i^{#Y} (-1)^{popcount(x & phase)} |x ^ flip>. For a real state only the
    // real part of i^{#Y} survives.
    static constexpr double kRealPhase[4] = {1.0, 0.0, -1.0, 0.0};
    const double global = kRealPhase[term.y_count() % 4];
    if (global == 0.0) return 0.0;
    const std::uint32_t flip = term.flip_mask();
    const std::uint32_t phase = term.phase_mask();
    const double* a = amps_.data();
    const std::size_t dim = amps_.size();
    double sum = 0.0;
    if (phase == 0) {
        for (std::size_t x = 0; x < dim; ++x) sum += a[x ^ flip] * a[x];
    } else {
        const auto& parity = parity_table();
        for (std::size_t x = 0; x < dim; ++x) {
            const double v = a[x ^ flip] * a[x];
            sum += parity[x & phase] ? -v : v;
        }
    }
    return global * term.coefficient * sum;
}

double RealStatevector::expectation(const PauliHamiltonian& h) const {
    if (h.num_qubits != num_qubits_) throw std::invalid_argument("hamiltonian size mismatch");
    double e = 0.0;
    for (const auto& t : h.terms) e += expectation(t);
    return e;
}

std::vector<double> cz_chain_signs(int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::uint32_t pair_mask = (num_qubits > 1) ? ((1u << (num_qubits - 1)) - 1u) : 0u;
    std::vector<double> signs(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const auto bits = static_cast<std::uint32_t>(x);
        const int adjacent_ones = std::popcount(bits & (bits >> 1) & pair_mask);
        signs[x] = (adjacent_ones & 1) ? -1.0 : 1.0;
    }
    return signs;
}

void prepare_ansatz_state(RealStatevector& state, const AnsatzSpec& ansatz,
                          std::span<const double> params, std::span<const double> cz_signs) {
    if (ansatz.num_qubits != state.num_qubits())
        throw std::invalid_argument("ansatz and state qubit counts differ");
    if (static_cast<int>(params.size()) != ansatz.parameter_count())
        throw std::invalid_argument("parameter count mismatch: got " + std::to_string(params.size()) +
                                    ", expected " + std::to_string(ansatz.parameter_count()));
    state.reset();
    std::size_t k = 0;
    for (int layer = 0; layer < ansatz.num_layers; ++layer) {
        int q = 0;
        for (; q + 1 < ansatz.num_qubits; q += 2, k += 2) state.apply_ry_pair(q, params[k], params[k + 1]);
        if (q < ansatz.num_qubits) state.apply_ry(q, params[k++]);
        state.apply_diagonal_signs(cz_signs);
    }
}

}  // namespace qcs::quantum
