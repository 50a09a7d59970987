#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcs/sim/engine.hpp"

namespace qcs::resources {

using sim::Seconds;

enum class QpuState { Idle, SessionActive, CacheValid, CacheExpired, Recalibrating, BusyBackground };

enum class QpuTrigger {
    NewJob,
    ShotDone,
    NextTheta,
    Expire,
    Recalibrate,
    RecalibDone,
    JobDone,
    BackgroundStart,
    BackgroundDone,
};

const char* to_string(QpuState state);
const char* to_string(QpuTrigger trigger);

struct TransitionRecord {
    Seconds time = 0.0;
    int qpu_id = 0;
    QpuState from = QpuState::Idle;
    QpuState to = QpuState::Idle;
    QpuTrigger trigger = QpuTrigger::NewJob;
};

struct QpuUnit {
    int id = 0;
    QpuState state = QpuState::Idle;
    Seconds last_calib = 0.0;
    std::optional<int> bound_session;
    std::optional<Seconds> cache_created_at;  // C_q token
    std::uint64_t cache_generation = 0;       // bumps whenever the cache is (re)armed
    std::optional<Seconds> recalibration_done_at;
    Seconds busy_until = 0.0;
};

// Strict: valid iff now - last_calib < tau_drift.
bool is_calibration_valid(const QpuUnit& qpu, Seconds now, Seconds tau_drift);

// The QPU pool and its transition log. Every state change goes through transition(),
// which rejects edges outside the session state machine.
class QpuPool {
public:
    QpuPool(int count, Seconds tau_drift, Seconds t_calib);

    [[nodiscard]] int size() const { return static_cast<int>(units_.size()); }
    [[nodiscard]] const QpuUnit& at(int id) const { return units_.at(static_cast<std::size_t>(id)); }
    [[nodiscard]] const std::vector<QpuUnit>& units() const { return units_; }
    [[nodiscard]] const std::vector<TransitionRecord>& log() const { return log_; }

    void transition(int id, QpuTrigger trigger, Seconds now, std::optional<int> session = std::nullopt);

    // Starts a recalibration and returns its completion time. A request on a QPU that
    // is already recalibrating returns the pending completion without a second charge.
    // `session` binds an unbound QPU to the requester.
    Seconds trigger_recalibration(int id, Seconds now, std::optional<int> session = std::nullopt);

    // Alg. 1 line 9: a valid cache hit refreshes the calibration timestamp.
    void refresh_calibration(int id, Seconds now);

    void set_busy_until(int id, Seconds t) { unit(id).busy_until = t; }

    // Lowest-numbered Idle QPU not listed in `excluded`.
    [[nodiscard]] std::optional<int> first_idle(const std::vector<int>& excluded = {}) const;
    [[nodiscard]] std::optional<int> find_cached(int session) const;

private:
    QpuUnit& unit(int id) { return units_.at(static_cast<std::size_t>(id)); }
    [[noreturn]] void illegal(const QpuUnit& q, QpuTrigger trigger, const std::string& why) const;

    std::vector<QpuUnit> units_;
    std::vector<TransitionRecord> log_;
    Seconds tau_drift_;
    Seconds t_calib_;
};

// Replays a transition log against the state machine's edge table. Returns an empty
// string when every QPU's sequence is accepted, otherwise a description of the first
// violation.
std::string replay_transition_log(const std::vector<TransitionRecord>& log, int num_qpus);

struct ClassicalNode {
    int id = 0;
    Seconds busy_until = 0.0;
};

class ClassicalPool {
public:
    explicit ClassicalPool(int count);
    [[nodiscard]] std::optional<int> first_free(Seconds now) const;
    void occupy(int id, Seconds until);
    [[nodiscard]] const std::vector<ClassicalNode>& nodes() const { return nodes_; }

private:
    std::vector<ClassicalNode> nodes_;
};

}  // namespace qcs::resources
