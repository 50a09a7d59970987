#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcs/sim/engine.hpp"

namespace qcs::metrics {

using sim::Seconds;

struct IterationRecord {
    std::string run_id;
    std::string circuit_id;
    std::string band;
    std::string mode;
    int iteration = 0;
    Seconds ttns = 0.0;
    Seconds queue_delay = 0.0;
    Seconds calib_time = 0.0;
    Seconds qpu_time = 0.0;
    Seconds residual_cpu_block = 0.0;
    double energy = 0.0;
    bool drift_event = false;
    Seconds timestamp = 0.0;
    Seconds net_time = 0.0;
    double exact_energy = 0.0;  // noise-free energy tracked by the convergence detector
    double fidelity = 1.0;
    int qpu_id = 0;
};

struct RunSummary {
    std::string run_id;
    std::string variant;
    std::string mode;
    std::string circuit_id;
    std::string band;
    int qubits = 0;
    std::uint64_t seed = 0;
    Seconds mean_ttns = 0.0;
    Seconds ttns_p25 = 0.0;
    Seconds ttns_p50 = 0.0;
    Seconds ttns_p75 = 0.0;
    double qdc = 0.0;
    std::optional<Seconds> convergence_time;  // nullopt: did not converge
    int iterations_completed = 0;
    int drift_events = 0;
    int calibrations = 0;
    double calib_overhead_fraction = 0.0;
    double final_energy = 0.0;
    double best_energy = 0.0;
    std::string stop_reason;  // horizon | max_iter | aborted
    Seconds max_background_wait = 0.0;
    std::string config_hash;
};

struct DriftEvent {
    Seconds time = 0.0;
    int qpu_id = 0;
    int session = 0;
    std::string source;  // dispatch | expiry
};

struct DecisionRecord {
    Seconds time = 0.0;
    std::uint64_t job = 0;
    std::string kind;
    std::string mode;
    double rho = 0.0;
    int resource = -1;
    Seconds queue_delay = 0.0;
    bool drift_triggered = false;
    std::string calibration;
};

struct ShotInterval {
    Seconds start = 0.0;
    Seconds end = 0.0;
    int qpu_id = 0;
};

// Sum of interval lengths / (num_qpus * horizon). Throws on intervals outside [0, horizon].
double compute_qdc(const std::vector<ShotInterval>& intervals, int num_qpus, Seconds horizon);

// Time of the first record whose trailing window of exact energies spans less than
// epsilon, minus the submission time.
std::optional<Seconds> convergence_time(const std::vector<IterationRecord>& records, int window, double epsilon,
                                        Seconds submitted_at = 0.0);

// Linear interpolation between closest ranks; q in [0, 1].
double percentile(std::vector<double> values, double q);

struct Stats {
    double mean = 0.0;
    double std = 0.0;
    double p25 = 0.0;
    double p50 = 0.0;
    double p75 = 0.0;
    std::size_t count = 0;
};

Stats describe(const std::vector<double>& values);

enum class GroupBy { Mode, Band, Qubits, Variant, ModeBand };

struct GroupRow {
    std::string key;
    std::size_t runs = 0;
    std::size_t converged = 0;
    std::map<std::string, Stats> metrics;  // mean_ttns, qdc, convergence_time, drift_events, ...
};

// Per-group statistics for every numeric summary field. Groups are ordered by key
// (numerically for qubit counts). Unconverged runs are excluded from the
// convergence_time statistics and counted separately. Throws if a group mixes
// config hashes.
std::vector<GroupRow> aggregate(const std::vector<RunSummary>& summaries, GroupBy group_by);

// Mean convergence time where unconverged runs count as the horizon.
double censored_mean_convergence(const std::vector<RunSummary>& summaries, Seconds horizon);

// Checks residual + queue + calib + net + qpu == ttns within tolerance.
bool ttns_identity_holds(const IterationRecord& r, double tolerance = 1e-9);

}  // namespace qcs::metrics
