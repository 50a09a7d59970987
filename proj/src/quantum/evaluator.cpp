#include "qcs/quantum/evaluator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace qcs::quantum {

double exact_expectation(const AnsatzSpec& ansatz, std::span<const double> params,
                         const PauliHamiltonian& h) {
    if (h.num_qubits != ansatz.num_qubits) throw std::invalid_argument("ansatz/hamiltonian size mismatch");
    RealStatevector state(ansatz.num_qubits);
    const auto signs = cz_chain_signs(ansatz.num_qubits);
    prepare_ansatz_state(state, ansatz, params, signs);
    return state.expectation(h);
}

namespace {

EvalResult apply_noise(double exact, const EvalRequest& req, double shot_scale, sim::RngStream& stream) {
    if (!(req.fidelity > 0.0 && req.fidelity <= 1.0)) throw std::invalid_argument("fidelity must lie in (0, 1]");
    EvalResult r;
    r.exact_energy = exact;
    if (!req.shots) {
        r.energy = req.fidelity == 1.0 ? exact : req.fidelity * exact;
        return r;
    }
    if (*req.shots <= 0) throw std::invalid_argument("shots must be positive");
    const double sd = shot_scale / std::sqrt(static_cast<double>(*req.shots));
    r.energy = req.fidelity * exact + sd * stream.normal();
    r.variance_estimate = sd * sd;
    return r;
}

}  // namespace

EvalResult sampled_expectation(const EvalRequest& req, const AnsatzSpec& ansatz,
                               const PauliHamiltonian& h, sim::RngStream& stream) {
    const double exact = exact_expectation(ansatz, req.params, h);
    return apply_noise(exact, req, std::sqrt(h.coefficient_norm_squared()), stream);
}

double drift_fidelity(double elapsed_since_calib, double tau_drift, double tau_decay) {
    if (elapsed_since_calib < 0.0 || tau_drift < 0.0 || tau_decay < 0.0)
        throw std::invalid_argument("drift_fidelity arguments must be non-negative");
    if (elapsed_since_calib <= tau_drift) return 1.0;
    if (tau_decay == 0.0) return std::numeric_limits<double>::min();
    const double f = std::exp(-(elapsed_since_calib - tau_drift) / tau_decay);
    return f > 0.0 ? f : std::numeric_limits<double>::min();
}

std::size_t EnergyCache::Hash::operator()(const std::vector<double>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double d : v) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof bits);
        h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

std::optional<double> EnergyCache::find(std::span<const double> params) const {
    auto it = entries_.find(std::vector<double>(params.begin(), params.end()));
    if (it == entries_.end()) return std::nullopt;
    ++hits_;
    return it->second;
}

void EnergyCache::insert(std::span<const double> params, double energy) {
    entries_.emplace(std::vector<double>(params.begin(), params.end()), energy);
}

Evaluator::Evaluator(AnsatzSpec ansatz, PauliHamiltonian h, std::shared_ptr<EnergyCache> cache)
    : ansatz_(ansatz),
      hamiltonian_(std::move(h)),
      cz_signs_(cz_chain_signs(ansatz.num_qubits)),
      state_(ansatz.num_qubits),
      shot_scale_(std::sqrt(hamiltonian_.coefficient_norm_squared())),
      cache_(std::move(cache)) {
    hamiltonian_.validate();
    if (hamiltonian_.num_qubits != ansatz_.num_qubits)
        throw std::invalid_argument("ansatz/hamiltonian size mismatch");
}

double Evaluator::exact(std::span<const double> params) {
    if (cache_) {
        if (auto hit = cache_->find(params)) return *hit;
    }
    prepare_ansatz_state(state_, ansatz_, params, cz_signs_);
    const double e = state_.expectation(hamiltonian_);
    if (cache_) cache_->insert(params, e);
    return e;
}

EvalResult Evaluator::evaluate(const EvalRequest& req, sim::RngStream& stream) {
    return apply_noise(exact(req.params), req, shot_scale_, stream);
}

}  // namespace qcs::quantum
