#include <algorithm>

#include "qcs/sched/scheduler.hpp"

namespace qcs::sched {

namespace {

using resources::QpuState;

bool claimed(const std::vector<int>& taken, int id) { return std::find(taken.begin(), taken.end(), id) != taken.end(); }


}  // namespace

std::vector<Decision> dispatch(std::vector<JobEntry>& queue, const resources::QpuPool& qpus,
                               const ClassicalView& classical, Seconds now, const SchedulerConfig& cfg,
                               DispatchStats& stats) {
    std::vector<Decision> decisions;
    std::vector<int> taken_qpus;
    std::vector<int> taken_nodes;
    std::vector<bool> placed(queue.size(), false);

    for (std::size_t idx : pop_order(queue, now, cfg)) {
        const JobEntry& job = queue[idx];
        Decision d;
        d.job_id = job.id;
        d.kind = job.kind;
        d.rho = priority_score(job, now, cfg);

        if (job.kind == JobKind::ClassicalStep) {
            auto node = std::find_if(classical.free_nodes.begin(), classical.free_nodes.end(),
                                     [&](int n) { return !claimed(taken_nodes, n); });
            if (node == classical.free_nodes.end()) continue;
            d.resource = *node;
            taken_nodes.push_back(*node);
            decisions.push_back(d);
            placed[idx] = true;
            continue;
        }

        const bool session_job = job.kind == JobKind::QuantumCircuit && job.session.has_value();
        bool fall_back = true;

        if (session_job && job.hot && is_session_aware(cfg.mode)) {
            ++stats.cache_lookups;
            const auto cached = qpus.find_cached(*job.session);
            if (!cached) {
                ++stats.placement_misses;
                d.placement_miss = true;
            } else {
                fall_back = false;
                const auto& q = qpus.at(*cached);
                const bool available = q.state == QpuState::CacheValid || q.state == QpuState::CacheExpired;
                if (!available || claimed(taken_qpus, q.id)) continue;
                d.resource = q.id;
                if (cfg.mode == ModeKind::EFaaS) {
                    const bool valid = q.state == QpuState::CacheValid && resources::is_calibration_valid(q, now, cfg.tau_drift);
                    d.cache_hit = valid;
                    d.calibration = valid ? Calibration::None : Calibration::Reactive;
                } else {
                    // Reserved QPU: renew inside the safety margin, before the calibration lapses.
                    d.cache_hit = true;
                    d.calibration = now - q.last_calib >= cfg.tau_drift - cfg.epsilon_margin ? Calibration::Proactive
                                                                                            : Calibration::None;
                }
            }
        }

        if (fall_back) {
            const auto idle = qpus.first_idle(taken_qpus);
            if (!idle) continue;
            d.resource = *idle;
            if (session_job && now - job.calibrated_at >= cfg.tau_drift)
                // A reservation window opens on a fresh calibration.
                d.calibration = cfg.mode == ModeKind::SR ? Calibration::Proactive : Calibration::Reactive;
        }

        taken_qpus.push_back(d.resource);
        decisions.push_back(d);
        placed[idx] = true;
    }

    std::vector<JobEntry> remaining;
    remaining.reserve(queue.size());
    for (std::size_t i = 0; i < queue.size(); ++i)
        if (!placed[i]) remaining.push_back(std::move(queue[i]));
    queue = std::move(remaining);
    return decisions;
}

}  // namespace qcs::sched
