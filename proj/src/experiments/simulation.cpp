#include "qcs/experiments/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "qcs/resources/background.hpp"
#include "qcs/sim/engine.hpp"
#include "qcs/sim/rng.hpp"
#include "qcs/workload/session.hpp"
#include "qcs/workload/spsa.hpp"

namespace qcs::experiments {

namespace {

using resources::QpuState;
using resources::QpuTrigger;
using sched::Calibration;
using sched::JobEntry;
using sched::JobKind;
using sim::EventKind;
using sim::Seconds;

constexpr int kSessionId = 0;

// Timestamps of the iteration in flight; the TTNS components are differences of these.
struct IterationClock {
    Seconds start = 0.0;
    Seconds cpu_start = 0.0;
    Seconds cpu_end = 0.0;
    Seconds net = 0.0;
    Seconds provider_delay = 0.0;
    Seconds arrival = 0.0;
    Seconds assigned = 0.0;
    Seconds shot_start = 0.0;
    Seconds shot_end = 0.0;
    Seconds residual = 0.0;
    int qpu = -1;
    bool drift = false;
    bool calibrated = false;
    double fidelity = 1.0;
};

struct RunningJob {
    bool background = false;
    std::size_t background_index = 0;
    Seconds start = 0.0;
};

class Run {
public:
    explicit Run(const RunSpec& spec)
        : spec_(spec),
          cfg_(spec.config),
          sched_(cfg_.scheduler(spec.mode)),
          spsa_cfg_(cfg_.spsa()),
          qpus_(cfg_.n_qpu, cfg_.tau_drift, cfg_.t_calib),
          classical_(cfg_.n_classical),
          evaluator_(spec.circuit->ansatz, spec.circuit->hamiltonian, spec.energy_cache),
          queue_stream_(spec.seed, "queue-delay/" + spec.circuit->id),
          jitter_stream_(spec.seed, "qpu-jitter/" + spec.circuit->id),
          background_stream_(spec.seed, "background"),
          spsa_stream_(spec.seed, "spsa/" + spec.circuit->id),
          shots_stream_(spec.seed, "shots/" + spec.circuit->id),
          running_(static_cast<std::size_t>(cfg_.n_qpu)) {
        stale_logged_.assign(running_.size(), false);
        result_.config_hash = config_hash(cfg_);
        run_id_ = make_run_id(spec);
        session_.id = kSessionId;
        session_.benchmark = spec.circuit;
        session_.weight = cfg_.session_weight;
        session_.spsa = workload::initial_state(spec.circuit->ansatz.parameter_count(), spsa_stream_,
                                                cfg_.spsa_init_spread);
        background_ = resources::generate_background(background_stream_, cfg_.horizon, cfg_.lambda,
                                                     cfg_.bg_service_mean);
        background_start_.assign(background_.size(), std::nullopt);
    }

    RunResult execute() {
        for (std::size_t i = 0; i < background_.size(); ++i)
            engine_.schedule(EventKind::BackgroundArrival, background_[i].arrival, i);
        begin_iteration(0.0);
        engine_.run_until(cfg_.horizon, [this](const sim::Event& e) { handle(e); });
        if (stop_reason_.empty()) stop_reason_ = "horizon";
        summarize();
        return std::move(result_);
    }

private:
    // ---- event handling ----------------------------------------------------------

    void handle(const sim::Event& e) {
        switch (e.kind) {
            case EventKind::BackgroundArrival: on_background_arrival(e.payload); break;
            case EventKind::CpuStepComplete: on_cpu_complete(); break;
            case EventKind::JobArrival: on_session_arrival(); break;
            case EventKind::CalibrationComplete: on_calibration_complete(static_cast<int>(e.payload)); break;
            case EventKind::ShotComplete: on_shot_complete(static_cast<int>(e.payload)); break;
            case EventKind::FutureResolved: on_future_resolved(); break;
            case EventKind::CacheExpiry: on_cache_expiry(static_cast<int>(e.payload), e.token); break;
            case EventKind::HorizonEnd: break;
        }
    }

    void begin_iteration(Seconds now) {
        clock_ = IterationClock{};
        clock_.start = now;
        clock_.residual = workload::residual_classical_block(spec_.mode, cfg_.t_cpu, cfg_.t_async,
                                                             session_.last_shot_end.has_value());
        enqueue({.kind = JobKind::ClassicalStep, .session = kSessionId, .weight = session_.weight});
        try_dispatch();
    }

    void on_background_arrival(std::uint64_t index) {
        ++result_.background_jobs_arrived;
        JobEntry job{.kind = JobKind::BackgroundBatch, .weight = cfg_.background_weight};
        background_job_index_[next_job_id_] = static_cast<std::size_t>(index);
        enqueue(job);
        try_dispatch();
    }

    void on_cpu_complete() {
        clock_.cpu_end = engine_.now();
        clock_.net = spec_.mode == ModeKind::PQ ? 0.0 : cfg_.t_net;
        clock_.provider_delay = sched::queue_delay(sched_, queue_stream_, first_submission_);
        first_submission_ = false;
        engine_.schedule(EventKind::JobArrival, engine_.now() + clock_.net + clock_.provider_delay);
    }

    void on_session_arrival() {
        clock_.arrival = engine_.now();
        enqueue({.kind = JobKind::QuantumCircuit,
                 .session = kSessionId,
                 .hot = session_.hot,
                 .last_shot_end = session_.last_shot_end,
                 .weight = session_.weight,
                 .calibrated_at = calibrated_at_});
        try_dispatch();
    }

    void on_calibration_complete(int qpu) {
        const Seconds now = engine_.now();
        qpus_.transition(qpu, QpuTrigger::RecalibDone, now, kSessionId);
        calibrated_at_ = now;
        start_session_shot(qpu, now);
    }

    void on_shot_complete(int qpu) {
        const Seconds now = engine_.now();
        RunningJob job = running_[static_cast<std::size_t>(qpu)];
        if (job.background) {
            qpus_.transition(qpu, QpuTrigger::BackgroundDone, now);
            result_.background_shots.push_back({job.start, now, qpu});
            try_dispatch();
            return;
        }
        clock_.shot_end = now;
        result_.foreground_shots.push_back({clock_.shot_start, now, qpu});

        const auto& eval_plus = evaluator_.evaluate({perturbation_.plus, cfg_.shots, clock_.fidelity}, shots_stream_);
        const auto& eval_minus = evaluator_.evaluate({perturbation_.minus, cfg_.shots, clock_.fidelity}, shots_stream_);
        future_->resolve(now, eval_plus, eval_minus);

        const bool last = session_.spsa.iteration + 1 >= spsa_cfg_.max_iter;
        if (is_session_aware(spec_.mode) && !last) {
            qpus_.transition(qpu, QpuTrigger::ShotDone, now, kSessionId);
            session_.hot = true;
            session_.bound_qpu = qpu;
            if (spec_.mode == ModeKind::EFaaS) {
                const auto& unit = qpus_.at(qpu);
                engine_.schedule(EventKind::CacheExpiry, std::max(now, unit.last_calib + cfg_.tau_drift),
                                 static_cast<std::uint64_t>(qpu), unit.cache_generation);
            }
        } else {
            qpus_.transition(qpu, QpuTrigger::JobDone, now, kSessionId);
            session_.hot = false;
            session_.bound_qpu.reset();
        }
        session_.last_shot_end = now;
        engine_.schedule(EventKind::FutureResolved, now);
        try_dispatch();
    }

    void on_future_resolved() {
        const Seconds now = engine_.now();
        const auto& plus = future_->plus();
        const auto& minus = future_->minus();
        workload::SpsaState next;
        try {
            next = workload::spsa_step(session_.spsa, spsa_cfg_, plus.energy, minus.energy);
        } catch (const workload::NonFiniteEnergy&) {
            future_->abort();
            result_.future_states.push_back(future_->state());
            stop_reason_ = "aborted";
            engine_.stop();
            return;
        }
        future_->commit();
        result_.future_states.push_back(future_->state());
        const int iteration = session_.spsa.iteration;
        session_.spsa = std::move(next);

        const double tracked = clock_.fidelity * evaluator_.exact(session_.spsa.theta);
        workload::record_energy(session_.spsa, tracked);

        metrics::IterationRecord r;
        r.run_id = run_id_;
        r.circuit_id = spec_.circuit->id;
        r.band = std::string(workload::band_name(spec_.circuit->band));
        r.mode = std::string(mode_name(spec_.mode));
        r.iteration = iteration;
        r.ttns = clock_.shot_end - clock_.start;
        r.residual_cpu_block = clock_.cpu_end - clock_.cpu_start;
        r.net_time = clock_.net;
        r.queue_delay = (clock_.cpu_start - clock_.start) + clock_.provider_delay + (clock_.assigned - clock_.arrival);
        r.calib_time = clock_.shot_start - clock_.assigned;
        r.qpu_time = clock_.shot_end - clock_.shot_start;
        r.energy = 0.5 * (plus.energy + minus.energy);
        r.exact_energy = tracked;
        r.fidelity = clock_.fidelity;
        r.drift_event = clock_.drift;
        r.timestamp = now;
        r.qpu_id = clock_.qpu;
        result_.iterations.push_back(std::move(r));
        if (clock_.calibrated) ++calibrated_iterations_;

        if (!session_.converged_at &&
            workload::check_convergence(session_.spsa.energy_history, cfg_.convergence_window, cfg_.convergence_epsilon))
            session_.converged_at = now;

        if (session_.spsa.iteration >= spsa_cfg_.max_iter) {
            stop_reason_ = "max_iter";
            return;
        }
        begin_iteration(now);
    }

    void on_cache_expiry(int qpu, std::uint64_t generation) {
        const Seconds now = engine_.now();
        const auto& unit = qpus_.at(qpu);
        if (unit.cache_generation != generation || unit.state != QpuState::CacheValid) return;
        if (resources::is_calibration_valid(unit, now, cfg_.tau_drift)) {
            // Refreshed since the timer was armed.
            engine_.schedule(EventKind::CacheExpiry, unit.last_calib + cfg_.tau_drift, static_cast<std::uint64_t>(qpu),
                             generation);
            return;
        }
        qpus_.transition(qpu, QpuTrigger::Expire, now, kSessionId);
        log_drift(now, qpu, "expiry");
    }

    // ---- scheduling ----------------------------------------------------------------

    void enqueue(JobEntry job) {
        job.id = next_job_id_++;
        job.enqueued_at = engine_.now();
        job.enqueue_order = job.id;
        queue_.push_back(job);
    }

    void try_dispatch() {
        const Seconds now = engine_.now();
        sched::ClassicalView view;
        for (const auto& node : classical_.nodes())
            if (node.busy_until <= now) view.free_nodes.push_back(node.id);
        const auto decisions = sched::dispatch(queue_, qpus_, view, now, sched_, result_.dispatch_stats);
        for (const auto& d : decisions) apply(d, now);
    }

    void apply(const sched::Decision& d, Seconds now) {
        metrics::DecisionRecord log{.time = now,
                                    .job = d.job_id,
                                    .kind = sched::to_string(d.kind),
                                    .mode = std::string(mode_name(spec_.mode)),
                                    .rho = d.rho,
                                    .resource = d.resource};
        switch (d.kind) {
            case JobKind::ClassicalStep: start_classical(d.resource, now); break;
            case JobKind::BackgroundBatch: {
                const std::size_t index = background_job_index_.at(d.job_id);
                log.queue_delay = now - background_[index].arrival;
                start_background(d.resource, index, now);
                break;
            }
            case JobKind::QuantumCircuit:
                start_session_dispatch(d, now);
                log.queue_delay = clock_.provider_delay + (now - clock_.arrival);
                log.drift_triggered = clock_.drift;
                break;
        }
        log.calibration = d.calibration == Calibration::None       ? "none"
                          : d.calibration == Calibration::Reactive ? "reactive"
                                                                   : "proactive";
        if (d.placement_miss) log.calibration += "+placement_miss";
        result_.decisions.push_back(std::move(log));
    }

    void start_classical(int node, Seconds now) {
        clock_.cpu_start = now;
        classical_.occupy(node, now + clock_.residual);
        perturbation_ = workload::perturb(session_.spsa, spsa_cfg_, spsa_stream_);
        const Seconds budget = spec_.mode == ModeKind::EFaaS ? cfg_.t_async : 0.0;
        future_.emplace(now, budget);
        engine_.schedule(EventKind::CpuStepComplete, now + clock_.residual);
    }

    void start_background(int qpu, std::size_t index, Seconds now) {
        qpus_.transition(qpu, QpuTrigger::BackgroundStart, now);
        if (spec_.mode == ModeKind::SR && reserved_qpu_ && *reserved_qpu_ == qpu)
            ++result_.reserved_qpu_foreign_placements;
        ++result_.background_jobs_started;
        background_start_[index] = now;
        running_[static_cast<std::size_t>(qpu)] = {true, index, now};
        engine_.schedule(EventKind::ShotComplete, now + background_[index].service_time, static_cast<std::uint64_t>(qpu));
    }

    void start_session_dispatch(const sched::Decision& d, Seconds now) {
        const int qpu = d.resource;
        clock_.assigned = now;
        clock_.qpu = qpu;
        const auto& unit = qpus_.at(qpu);
        if (spec_.mode == ModeKind::SR && !reserved_qpu_) reserved_qpu_ = qpu;

        if (d.calibration == Calibration::None) {
            if (unit.state == QpuState::CacheValid) {
                qpus_.transition(qpu, QpuTrigger::NextTheta, now, kSessionId);
                if (spec_.mode == ModeKind::EFaaS) qpus_.refresh_calibration(qpu, now);
            } else {
                qpus_.transition(qpu, QpuTrigger::NewJob, now, kSessionId);
            }
            start_session_shot(qpu, now);
            return;
        }

        if (d.calibration == Calibration::Reactive && !cfg_.recalibrate_on_drift && !is_session_aware(spec_.mode)) {
            // Execute on the stale calibration; fidelity decays with its age.
            const Seconds age = now - calibrated_at_;
            qpus_.transition(qpu, QpuTrigger::NewJob, now, kSessionId);
            if (!stale_logged_[static_cast<std::size_t>(qpu)]) {
                log_drift(now, qpu, "dispatch");
                stale_logged_[static_cast<std::size_t>(qpu)] = true;
            }
            clock_.fidelity = quantum::drift_fidelity(age, cfg_.tau_drift, cfg_.tau_decay);
            start_session_shot(qpu, now);
            return;
        }

        if (d.calibration == Calibration::Reactive) {
            if (unit.state == QpuState::CacheValid) {
                qpus_.transition(qpu, QpuTrigger::Expire, now, kSessionId);
                log_drift(now, qpu, "dispatch");
            } else if (unit.state != QpuState::CacheExpired) {
                log_drift(now, qpu, "dispatch");
            }
            // CacheExpired: the expiry timer already logged this drift.
            clock_.drift = true;
        }
        clock_.calibrated = true;
        ++calibrations_;
        const Seconds done = qpus_.trigger_recalibration(qpu, now, kSessionId);
        engine_.schedule(EventKind::CalibrationComplete, done, static_cast<std::uint64_t>(qpu));
    }

    void start_session_shot(int qpu, Seconds now) {
        clock_.shot_start = now;
        running_[static_cast<std::size_t>(qpu)] = {false, 0, now};
        double duration = cfg_.t_qpu;
        if (cfg_.t_qpu_jitter > 0.0) {
            if (cfg_.t_qpu_jitter_shape == JitterShape::Uniform) {
                duration += jitter_stream_.uniform(-cfg_.t_qpu_jitter, cfg_.t_qpu_jitter);
            } else {
                const double z = std::clamp(jitter_stream_.normal(), -3.0, 3.0);
                duration += z * cfg_.t_qpu_jitter / 3.0;
            }
        }
        engine_.schedule(EventKind::ShotComplete, now + duration, static_cast<std::uint64_t>(qpu));
    }

    void log_drift(Seconds now, int qpu, const char* source) {
        result_.drift_events.push_back({now, qpu, kSessionId, source});
        ++drift_counter_;
        clock_.drift = true;
    }

    // ---- summary -----------------------------------------------------------------------

    void summarize() {
        auto& s = result_.summary;
        const auto& it = result_.iterations;
        s.run_id = run_id_;
        s.variant = spec_.variant;
        s.mode = std::string(mode_name(spec_.mode));
        s.circuit_id = spec_.circuit->id;
        s.band = std::string(workload::band_name(spec_.circuit->band));
        s.qubits = spec_.circuit->num_qubits;
        s.seed = spec_.seed;
        s.config_hash = result_.config_hash;
        std::vector<double> ttns;
        for (const auto& r : it) ttns.push_back(r.ttns);
        const auto stats = metrics::describe(ttns);
        s.mean_ttns = stats.mean;
        s.ttns_p25 = stats.p25;
        s.ttns_p50 = stats.p50;
        s.ttns_p75 = stats.p75;

        std::vector<metrics::ShotInterval> counted = result_.foreground_shots;
        if (cfg_.qdc_count_background)
            counted.insert(counted.end(), result_.background_shots.begin(), result_.background_shots.end());
        s.qdc = metrics::compute_qdc(counted, cfg_.qdc_pool_normalized ? cfg_.n_qpu : 1, cfg_.horizon);

        if (session_.converged_at) s.convergence_time = *session_.converged_at;
        s.iterations_completed = static_cast<int>(it.size());
        s.drift_events = drift_counter_;
        s.calibrations = calibrations_;
        s.calib_overhead_fraction = it.empty() ? 0.0 : static_cast<double>(calibrated_iterations_) / it.size();
        s.final_energy = it.empty() ? 0.0 : it.back().exact_energy;
        s.best_energy = session_.spsa.best_energy;
        s.stop_reason = stop_reason_;

        Seconds max_wait = 0.0;
        for (std::size_t i = 0; i < background_.size(); ++i) {
            const Seconds started = background_start_[i].value_or(cfg_.horizon);
            max_wait = std::max(max_wait, started - background_[i].arrival);
        }
        s.max_background_wait = max_wait;
        result_.transitions = qpus_.log();
    }

    const RunSpec& spec_;
    ExperimentConfig cfg_;
    sched::SchedulerConfig sched_;
    workload::SpsaConfig spsa_cfg_;
    sim::Engine engine_;
    resources::QpuPool qpus_;
    resources::ClassicalPool classical_;
    quantum::Evaluator evaluator_;
    sim::RngStream queue_stream_, jitter_stream_, background_stream_, spsa_stream_, shots_stream_;
    std::vector<RunningJob> running_;

    workload::VqaSession session_;
    workload::Perturbation perturbation_;
    std::optional<workload::QuantumFuture> future_;
    IterationClock clock_;
    Seconds calibrated_at_ = 0.0;
    bool first_submission_ = true;
    std::vector<bool> stale_logged_;
    std::optional<int> reserved_qpu_;

    std::vector<resources::BackgroundJob> background_;
    std::vector<std::optional<Seconds>> background_start_;
    std::map<std::uint64_t, std::size_t> background_job_index_;
    std::vector<JobEntry> queue_;
    std::uint64_t next_job_id_ = 0;

    int drift_counter_ = 0;
    int calibrations_ = 0;
    int calibrated_iterations_ = 0;
    std::string stop_reason_;
    std::string run_id_;
    RunResult result_;
};

}  // namespace

std::string make_run_id(const RunSpec& spec) {
    return spec.variant + "-" + std::string(mode_name(spec.mode)) + "-" + spec.circuit->id + "-s" +
           std::to_string(spec.seed);
}

RunResult simulate(const RunSpec& spec) {
    if (!spec.circuit) throw std::invalid_argument("run spec has no circuit");
    if (auto errors = validate(spec.config); !errors.empty()) throw ConfigError(errors);
    return Run(spec).execute();
}

}  // namespace qcs::experiments
