#include "qcs/sched/scheduler.hpp"

namespace qcs::sched {

Seconds queue_delay(const SchedulerConfig& cfg, sim::RngStream& stream, bool first_dispatch) {
    switch (cfg.mode) {
        case ModeKind::SBQ: return sim::sample_lognormal(stream, cfg.queue_mu, cfg.queue_sigma);
        case ModeKind::PF:
            return sim::sample_lognormal(stream, cfg.queue_mu, cfg.queue_sigma) + cfg.cold_start_overhead;
        case ModeKind::SR:
            // The reservation itself waits in the provider queue once.
            return first_dispatch ? sim::sample_lognormal(stream, cfg.queue_mu, cfg.queue_sigma) : 0.0;
        case ModeKind::PQ: return first_dispatch ? cfg.pq_startup : cfg.pq_warm;
        case ModeKind::EFaaS: return 0.0;
    }
    return 0.0;
}

}  // namespace qcs::sched
