#include "qcs/resources/qpu.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace qcs::resources {

const char* to_string(QpuState state) {
    switch (state) {
        case QpuState::Idle: return "Idle";
        case QpuState::SessionActive: return "SessionActive";
        case QpuState::CacheValid: return "CacheValid";
        case QpuState::CacheExpired: return "CacheExpired";
        case QpuState::Recalibrating: return "Recalibrating";
        case QpuState::BusyBackground: return "BusyBackground";
    }
    return "?";
}

const char* to_string(QpuTrigger trigger) {
    switch (trigger) {
        case QpuTrigger::NewJob: return "NewJob";
        case QpuTrigger::ShotDone: return "ShotDone";
        case QpuTrigger::NextTheta: return "NextTheta";
        case QpuTrigger::Expire: return "Expire";
        case QpuTrigger::Recalibrate: return "Recalibrate";
        case QpuTrigger::RecalibDone: return "RecalibDone";
        case QpuTrigger::JobDone: return "JobDone";
        case QpuTrigger::BackgroundStart: return "BackgroundStart";
        case QpuTrigger::BackgroundDone: return "BackgroundDone";
    }
    return "?";
}

bool is_calibration_valid(const QpuUnit& qpu, Seconds now, Seconds tau_drift) {
    return now - qpu.last_calib < tau_drift;
}

QpuPool::QpuPool(int count, Seconds tau_drift, Seconds t_calib) : tau_drift_(tau_drift), t_calib_(t_calib) {
    if (count < 1) throw std::invalid_argument("QPU pool needs at least one unit");
    for (int i = 0; i < count; ++i) units_.push_back(QpuUnit{.id = i});
}

void QpuPool::illegal(const QpuUnit& q, QpuTrigger trigger, const std::string& why) const {
    std::ostringstream os;
    os << "state-machine violation on qpu " << q.id << ": " << to_string(trigger) << " from " << to_string(q.state);
    if (!why.empty()) os << " (" << why << ")";
    throw sim::SimulationError(os.str());
}

void QpuPool::transition(int id, QpuTrigger trigger, Seconds now, std::optional<int> session) {
    QpuUnit& q = unit(id);
    const QpuState from = q.state;
    QpuState to = from;
    switch (trigger) {
        case QpuTrigger::NewJob:
            if (from != QpuState::Idle) illegal(q, trigger, "");
            to = QpuState::SessionActive;
            q.bound_session = session;
            break;
        case QpuTrigger::ShotDone:
            if (from != QpuState::SessionActive) illegal(q, trigger, "");
            if (!q.bound_session) illegal(q, trigger, "no bound session");
            to = QpuState::CacheValid;
            q.cache_created_at = now;
            ++q.cache_generation;
            break;
        case QpuTrigger::NextTheta:
            if (from != QpuState::CacheValid) illegal(q, trigger, "");
            if (session != q.bound_session) illegal(q, trigger, "cache belongs to another session");
            if (!q.cache_created_at || now - *q.cache_created_at >= tau_drift_) illegal(q, trigger, "cache expired");
            to = QpuState::SessionActive;
            break;
        case QpuTrigger::Expire:
            if (from != QpuState::CacheValid) illegal(q, trigger, "");
            if (is_calibration_valid(q, now, tau_drift_)) illegal(q, trigger, "calibration still valid");
            to = QpuState::CacheExpired;
            break;
        case QpuTrigger::Recalibrate:
            if (from != QpuState::Idle && from != QpuState::CacheValid && from != QpuState::CacheExpired)
                illegal(q, trigger, "");
            to = QpuState::Recalibrating;
            if (session) q.bound_session = session;
            break;
        case QpuTrigger::RecalibDone:
            if (from != QpuState::Recalibrating) illegal(q, trigger, "");
            to = QpuState::SessionActive;
            q.last_calib = now;
            q.recalibration_done_at.reset();
            break;
        case QpuTrigger::JobDone:
            if (from != QpuState::SessionActive) illegal(q, trigger, "");
            to = QpuState::Idle;
            q.bound_session.reset();
            q.cache_created_at.reset();
            ++q.cache_generation;
            break;
        case QpuTrigger::BackgroundStart:
            if (from != QpuState::Idle) illegal(q, trigger, "");
            to = QpuState::BusyBackground;
            break;
        case QpuTrigger::BackgroundDone:
            if (from != QpuState::BusyBackground) illegal(q, trigger, "");
            to = QpuState::Idle;
            break;
    }
    q.state = to;
    log_.push_back({now, id, from, to, trigger});
}

Seconds QpuPool::trigger_recalibration(int id, Seconds now, std::optional<int> session) {
    QpuUnit& q = unit(id);
    if (q.state == QpuState::Recalibrating && q.recalibration_done_at) return *q.recalibration_done_at;
    transition(id, QpuTrigger::Recalibrate, now, q.bound_session ? q.bound_session : session);
    q.recalibration_done_at = now + t_calib_;
    q.busy_until = now + t_calib_;
    return now + t_calib_;
}

void QpuPool::refresh_calibration(int id, Seconds now) {
    QpuUnit& q = unit(id);
    if (now < q.last_calib) throw sim::SimulationError("calibration refresh moves backwards");
    q.last_calib = now;
}

std::optional<int> QpuPool::first_idle(const std::vector<int>& excluded) const {
    for (const auto& q : units_)
        if (q.state == QpuState::Idle && std::find(excluded.begin(), excluded.end(), q.id) == excluded.end())
            return q.id;
    return std::nullopt;
}

std::optional<int> QpuPool::find_cached(int session) const {
    for (const auto& q : units_)
        if (q.bound_session == session &&
            (q.state == QpuState::CacheValid || q.state == QpuState::CacheExpired ||
             q.state == QpuState::SessionActive || q.state == QpuState::Recalibrating))
            return q.id;
    return std::nullopt;
}

std::string replay_transition_log(const std::vector<TransitionRecord>& log, int num_qpus) {
    using S = QpuState;
    using T = QpuTrigger;
    static const std::set<std::tuple<S, T, S>> edges = {
        {S::Idle, T::NewJob, S::SessionActive},
        {S::Idle, T::BackgroundStart, S::BusyBackground},
        {S::Idle, T::Recalibrate, S::Recalibrating},
        {S::BusyBackground, T::BackgroundDone, S::Idle},
        {S::SessionActive, T::ShotDone, S::CacheValid},
        {S::SessionActive, T::JobDone, S::Idle},
        {S::CacheValid, T::NextTheta, S::SessionActive},
        {S::CacheValid, T::Expire, S::CacheExpired},
        {S::CacheValid, T::Recalibrate, S::Recalibrating},
        {S::CacheExpired, T::Recalibrate, S::Recalibrating},
        {S::Recalibrating, T::RecalibDone, S::SessionActive},
    };
    std::map<int, S> current;
    std::map<int, Seconds> last_time;
    for (int i = 0; i < num_qpus; ++i) current[i] = S::Idle;
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto& r = log[i];
        std::ostringstream os;
        os << "record " << i << " (t=" << r.time << ", qpu " << r.qpu_id << "): ";
        if (!current.count(r.qpu_id)) return os.str() + "unknown qpu";
        if (r.from != current[r.qpu_id])
            return os.str() + "from-state " + to_string(r.from) + " but machine is in " + to_string(current[r.qpu_id]);
        if (!edges.count({r.from, r.trigger, r.to}))
            return os.str() + "no edge " + to_string(r.from) + " -" + to_string(r.trigger) + "-> " + to_string(r.to);
        if (last_time.count(r.qpu_id) && r.time < last_time[r.qpu_id]) return os.str() + "time went backwards";
        current[r.qpu_id] = r.to;
        last_time[r.qpu_id] = r.time;
    }
    return {};
}

ClassicalPool::ClassicalPool(int count) {
    if (count < 1) throw std::invalid_argument("classical pool needs at least one node");
    for (int i = 0; i < count; ++i) nodes_.push_back({i, 0.0});
}

std::optional<int> ClassicalPool::first_free(Seconds now) const {
    for (const auto& n : nodes_)
        if (n.busy_until <= now) return n.id;
    return std::nullopt;
}

void ClassicalPool::occupy(int id, Seconds until) { nodes_.at(static_cast<std::size_t>(id)).busy_until = until; }

}  // namespace qcs::resources
