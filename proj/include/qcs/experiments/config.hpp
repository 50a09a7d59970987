#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcs/mode.hpp"
#include "qcs/sched/scheduler.hpp"
#include "qcs/workload/spsa.hpp"

namespace qcs::experiments {

enum class JitterShape { Uniform, Gaussian };

struct ExperimentConfig {
    // Testbed
    double horizon = 3000.0;
    int n_qpu = 3;
    int n_classical = 4;
    double lognormal_mu = 3.5;
    double lognormal_sigma = 0.8;
    double lambda = 0.05;
    double bg_service_mean = 5.0;
    // Workload and timing
    int shots = 4096;
    double t_qpu = 2.0;
    double t_qpu_jitter = 0.3;
    JitterShape t_qpu_jitter_shape = JitterShape::Uniform;
    double t_cpu = 1.5;
    double t_net = 0.5;
    double t_async = 0.8;
    double tau_drift = 300.0;
    double t_calib = 30.0;
    // Scheduler
    double alpha = 100.0;
    double beta = 5.0;
    double gamma = 1.0;
    double epsilon_margin = 5.0;
    double session_weight = 1.0;
    double background_weight = 1.0;
    double pq_startup = 2.0;
    double pq_warm = 0.5;
    double cold_start_overhead = 6.0;
    // Optimizer
    int max_iter = 1000;
    double spsa_a = 0.2;
    double spsa_c = 0.15;
    double spsa_big_a = 10.0;
    double spsa_alpha = 0.602;
    double spsa_gamma = 0.101;
    double spsa_init_spread = 0.1;
    int convergence_window = 10;
    double convergence_epsilon = 0.01;
    // Drift and accounting
    double tau_decay = 300.0;
    bool recalibrate_on_drift = true;
    bool qdc_pool_normalized = true;
    bool qdc_count_background = false;
    std::uint64_t suite_seed = 0;

    bool operator==(const ExperimentConfig&) const = default;

    [[nodiscard]] sched::SchedulerConfig scheduler(ModeKind mode) const;
    [[nodiscard]] workload::SpsaConfig spsa() const;
};

struct FieldError {
    std::string field;
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<FieldError> errors);
    [[nodiscard]] const std::vector<FieldError>& errors() const { return errors_; }

private:
    std::vector<FieldError> errors_;
};

// Flat "key = value" text; '#' starts a comment. Unknown keys, malformed values and
// out-of-range fields are reported together. Fields not mentioned keep their defaults.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Applies one "key=value" override; throws ConfigError.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::vector<FieldError> validate(const ExperimentConfig& cfg);

// Every field in declaration order, one per line, shortest round-trip numbers.
std::string serialize(const ExperimentConfig& cfg);

// 16 hex digits of FNV-1a over the canonical serialization.
std::string config_hash(const ExperimentConfig& cfg);

std::vector<std::string> config_keys();

}  // namespace qcs::experiments
