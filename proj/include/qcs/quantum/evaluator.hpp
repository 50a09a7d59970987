#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "qcs/quantum/hamiltonian.hpp"
#include "qcs/quantum/statevector.hpp"
#include "qcs/sim/rng.hpp"

namespace qcs::quantum {

struct EvalRequest {
    std::vector<double> params;
    std::optional<int> shots;  // nullopt means exact evaluation
    double fidelity = 1.0;
};

struct EvalResult {
    double energy = 0.0;
    double exact_energy = 0.0;
    double variance_estimate = 0.0;
};

double exact_expectation(const AnsatzSpec& ansatz, std::span<const double> params,
                         const PauliHamiltonian& h);

EvalResult sampled_expectation(const EvalRequest& req, const AnsatzSpec& ansatz,
                               const PauliHamiltonian& h, sim::RngStream& stream);

// 1 inside the calibration window (boundary included), exponential decay after it.
double drift_fidelity(double elapsed_since_calib, double tau_drift, double tau_decay);

// Memo of noise-free energies keyed by the exact parameter vector. Several runs that
// walk the same optimizer trajectory can share one instance.
class EnergyCache {
public:
    [[nodiscard]] std::optional<double> find(std::span<const double> params) const;
    void insert(std::span<const double> params, double energy);
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::size_t hits() const { return hits_; }

private:
    struct Hash {
        std::size_t operator()(const std::vector<double>& v) const;
    };
    std::unordered_map<std::vector<double>, double, Hash> entries_;
    mutable std::size_t hits_ = 0;
};

// Reusable evaluator bound to one ansatz and Hamiltonian.
class Evaluator {
public:
    Evaluator(AnsatzSpec ansatz, PauliHamiltonian h, std::shared_ptr<EnergyCache> cache = nullptr);

    [[nodiscard]] double exact(std::span<const double> params);
    EvalResult evaluate(const EvalRequest& req, sim::RngStream& stream);

    [[nodiscard]] const AnsatzSpec& ansatz() const { return ansatz_; }
    [[nodiscard]] const PauliHamiltonian& hamiltonian() const { return hamiltonian_; }
    [[nodiscard]] double shot_scale() const { return shot_scale_; }

private:
    AnsatzSpec ansatz_;
    PauliHamiltonian hamiltonian_;
    std::vector<double> cz_signs_;
    RealStatevector state_;
    double shot_scale_;
    std::shared_ptr<EnergyCache> cache_;
};

}  // namespace qcs::quantum
