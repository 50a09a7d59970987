#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcs/mode.hpp"
#include "qcs/resources/qpu.hpp"
#include "qcs/sim/rng.hpp"

namespace qcs::sched {

using sim::Seconds;

struct SchedulerConfig {
    ModeKind mode = ModeKind::EFaaS;
    double alpha = 100.0;
    double beta = 5.0;
    double gamma = 1.0;
    Seconds tau_drift = 300.0;
    Seconds epsilon_margin = 5.0;
    // Provider-side submission path.
    double queue_mu = 3.5;
    double queue_sigma = 0.8;
    Seconds cold_start_overhead = 6.0;
    Seconds pq_startup = 2.0;
    Seconds pq_warm = 0.5;
};

enum class JobKind { QuantumCircuit, ClassicalStep, BackgroundBatch };

const char* to_string(JobKind kind);

struct JobEntry {
    std::uint64_t id = 0;
    JobKind kind = JobKind::QuantumCircuit;
    std::optional<int> session;
    bool hot = false;  // E_s
    Seconds enqueued_at = 0.0;
    std::uint64_t enqueue_order = 0;
    std::optional<Seconds> last_shot_end;
    double weight = 1.0;
    // Time of the calibration snapshot the session's circuits were compiled against.
    // Baseline modes recalibrate once it is tau old, whichever QPU the job lands on.
    Seconds calibrated_at = 0.0;
};

// Delta t_wait: time since the session's previous shot, or since enqueue otherwise.
Seconds wait_time(const JobEntry& job, Seconds now);

// rho = alpha * [E_s = 1] + beta * (tau - dt_wait) / tau + gamma * W. Not clamped.
double priority_score(const JobEntry& job, Seconds now, const SchedulerConfig& cfg);

// Smallest gap between a hot job's score and any background job's score over every
// reachable wait time, for background weights up to max_background_weight.
double preemption_margin(const SchedulerConfig& cfg, double hot_weight, double max_background_weight);

// Pop order for one dispatch pass: descending rho with earlier enqueue first under
// EFaaS, plain FIFO for the baselines.
std::vector<std::size_t> pop_order(const std::vector<JobEntry>& queue, Seconds now, const SchedulerConfig& cfg);

enum class Calibration {
    None,        // shot runs on the current calibration
    Reactive,    // stale calibration found at dispatch; recalibrate, drift event
    Proactive,   // renewal inside the safety margin; no drift event
};

struct Decision {
    std::uint64_t job_id = 0;
    JobKind kind = JobKind::QuantumCircuit;
    int resource = -1;  // QPU id or classical node id
    double rho = 0.0;
    Calibration calibration = Calibration::None;
    bool cache_hit = false;
    bool placement_miss = false;
};

struct DispatchStats {
    std::uint64_t cache_lookups = 0;
    std::uint64_t placement_misses = 0;
};

struct ClassicalView {
    std::vector<int> free_nodes;
};

// One pass of the dual-resource dispatch loop. Dispatched jobs are removed from
// `queue`; jobs that cannot be placed stay for the next pass. Resources are not
// mutated: the caller applies the returned decisions in order.
std::vector<Decision> dispatch(std::vector<JobEntry>& queue, const resources::QpuPool& qpus,
                               const ClassicalView& classical, Seconds now, const SchedulerConfig& cfg,
                               DispatchStats& stats);

// Provider-side delay between submission and arrival at the QPU queue.
Seconds queue_delay(const SchedulerConfig& cfg, sim::RngStream& stream, bool first_dispatch);

}  // namespace qcs::sched
