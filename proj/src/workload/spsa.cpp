#include "qcs/workload/spsa.hpp"

#include <algorithm>
#include <cmath>

namespace qcs::workload {

double gain_a(const SpsaConfig& cfg, int k) { return cfg.a / std::pow(cfg.big_a + k + 1.0, cfg.alpha); }

double gain_c(const SpsaConfig& cfg, int k) { return cfg.c / std::pow(k + 1.0, cfg.gamma); }

SpsaState initial_state(int parameter_count, sim::RngStream& stream, double spread) {
    SpsaState s;
    s.theta.resize(static_cast<std::size_t>(parameter_count));
    for (auto& x : s.theta) x = stream.uniform(-spread, spread);
    return s;
}

Perturbation perturb(SpsaState& state, const SpsaConfig& cfg, sim::RngStream& stream) {
    const double ck = gain_c(cfg, state.iteration);
    state.delta.resize(state.theta.size());
    Perturbation p{state.theta, state.theta};
    for (std::size_t i = 0; i < state.theta.size(); ++i) {
        state.delta[i] = stream.rademacher();
        p.plus[i] += ck * state.delta[i];
        p.minus[i] -= ck * state.delta[i];
    }
    return p;
}

SpsaState spsa_step(const SpsaState& state, const SpsaConfig& cfg, double energy_plus, double energy_minus) {
    if (!std::isfinite(energy_plus) || !std::isfinite(energy_minus))
        throw NonFiniteEnergy("non-finite energy at iteration " + std::to_string(state.iteration));
    if (state.delta.size() != state.theta.size())
        throw std::logic_error("spsa_step called without a pending perturbation");
    SpsaState next = state;
    const double ak = gain_a(cfg, state.iteration);
    const double ck = gain_c(cfg, state.iteration);
    const double diff = energy_plus - energy_minus;
    if (diff != 0.0) {
        for (std::size_t i = 0; i < next.theta.size(); ++i)
            next.theta[i] -= ak * diff / (2.0 * ck * state.delta[i]);
    }
    next.delta.clear();
    ++next.iteration;
    return next;
}

void record_energy(SpsaState& state, double energy) {
    state.energy_history.push_back(energy);
    state.best_energy = std::min(state.best_energy, energy);
}

bool check_convergence(const std::vector<double>& history, int window, double epsilon) {
    if (window < 2) throw std::invalid_argument("convergence window must be at least 2");
    if (history.size() < static_cast<std::size_t>(window)) return false;
    const auto first = history.end() - window;
    const auto [lo, hi] = std::minmax_element(first, history.end());
    return *hi - *lo < epsilon;
}

}  // namespace qcs::workload
