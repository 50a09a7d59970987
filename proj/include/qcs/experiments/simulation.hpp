#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qcs/experiments/config.hpp"
#include "qcs/metrics/metrics.hpp"
#include "qcs/quantum/evaluator.hpp"
#include "qcs/resources/qpu.hpp"
#include "qcs/sched/scheduler.hpp"
#include "qcs/workload/future.hpp"
#include "qcs/workload/suite.hpp"

namespace qcs::experiments {

struct RunSpec {
    const workload::CircuitBenchmark* circuit = nullptr;
    ModeKind mode = ModeKind::EFaaS;
    std::uint64_t seed = 0;
    ExperimentConfig config;
    std::string variant = "default";
    // Optional memo of noise-free energies; runs of the same circuit and seed under
    // different modes follow the same parameter trajectory and can share it.
    std::shared_ptr<quantum::EnergyCache> energy_cache;
};

struct RunResult {
    metrics::RunSummary summary;
    std::vector<metrics::IterationRecord> iterations;
    std::vector<resources::TransitionRecord> transitions;
    std::vector<metrics::DecisionRecord> decisions;
    std::vector<metrics::DriftEvent> drift_events;
    std::vector<metrics::ShotInterval> foreground_shots;
    std::vector<metrics::ShotInterval> background_shots;
    std::vector<workload::FutureState> future_states;  // final state of every future, in order
    sched::DispatchStats dispatch_stats;
    int background_jobs_arrived = 0;
    int background_jobs_started = 0;
    int reserved_qpu_foreign_placements = 0;  // SR: jobs from anyone else on the reserved QPU
    std::string config_hash;
};

std::string make_run_id(const RunSpec& spec);

// Runs one session of `spec.circuit` under `spec.mode` against background traffic
// until the horizon or the iteration cap.
RunResult simulate(const RunSpec& spec);

}  // namespace qcs::experiments
