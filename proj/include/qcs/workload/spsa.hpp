#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "qcs/sim/rng.hpp"

namespace qcs::workload {

struct SpsaConfig {
    double a = 0.2;
    double c = 0.15;
    double big_a = 10.0;
    double alpha = 0.602;
    double gamma = 0.101;
    int max_iter = 1000;
};

struct SpsaState {
    std::vector<double> theta;
    int iteration = 0;
    std::vector<int> delta;  // perturbation of the pending evaluation pair
    double best_energy = std::numeric_limits<double>::infinity();
    std::vector<double> energy_history;
};

struct Perturbation {
    std::vector<double> plus;
    std::vector<double> minus;
};

class NonFiniteEnergy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double gain_a(const SpsaConfig& cfg, int k);
double gain_c(const SpsaConfig& cfg, int k);

// Uniform initial angles in [-spread, spread].
SpsaState initial_state(int parameter_count, sim::RngStream& stream, double spread = 0.1);

// Draws a Rademacher vector into state.delta and returns theta +/- c_k * delta.
Perturbation perturb(SpsaState& state, const SpsaConfig& cfg, sim::RngStream& stream);

// theta <- theta - a_k * (E+ - E-) / (2 c_k delta); iteration advances by one.
// Throws NonFiniteEnergy and leaves the state untouched if either energy is not finite.
SpsaState spsa_step(const SpsaState& state, const SpsaConfig& cfg, double energy_plus, double energy_minus);

// Appends to the tracked energy history and updates best_energy.
void record_energy(SpsaState& state, double energy);

// True iff at least `window` values exist and the last `window` span less than epsilon.
bool check_convergence(const std::vector<double>& history, int window, double epsilon);

}  // namespace qcs::workload
