#include <algorithm>
#include <numeric>

#include "qcs/sched/scheduler.hpp"

namespace qcs::sched {

const char* to_string(JobKind kind) {
    switch (kind) {
        case JobKind::QuantumCircuit: return "quantum";
        case JobKind::ClassicalStep: return "classical";
        case JobKind::BackgroundBatch: return "background";
    }
    return "?";
}

Seconds wait_time(const JobEntry& job, Seconds now) {
    const Seconds since = (job.session && job.last_shot_end) ? *job.last_shot_end : job.enqueued_at;
    return now - since;
}

double priority_score(const JobEntry& job, Seconds now, const SchedulerConfig& cfg) {
    const double session_term = job.hot ? cfg.alpha : 0.0;
    const double drift_term = cfg.beta * (cfg.tau_drift - wait_time(job, now)) / cfg.tau_drift;
    return session_term + drift_term + cfg.gamma * job.weight;
}

double preemption_margin(const SchedulerConfig& cfg, double hot_weight, double max_background_weight) {
    // The hot score is smallest as its wait approaches tau; the background score is
    // largest at zero wait and maximum weight.
    const double hot_min = cfg.alpha + cfg.gamma * hot_weight;
    const double background_max = cfg.beta + cfg.gamma * max_background_weight;
    return hot_min - background_max;
}

std::vector<std::size_t> pop_order(const std::vector<JobEntry>& queue, Seconds now, const SchedulerConfig& cfg) {
    std::vector<std::size_t> order(queue.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (cfg.mode == ModeKind::EFaaS) {
        std::vector<double> rho(queue.size());
        for (std::size_t i = 0; i < queue.size(); ++i) rho[i] = priority_score(queue[i], now, cfg);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (rho[a] != rho[b]) return rho[a] > rho[b];
            return queue[a].enqueue_order < queue[b].enqueue_order;
        });
    } else {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return queue[a].enqueue_order < queue[b].enqueue_order;
        });
    }
    return order;
}

}  // namespace qcs::sched
