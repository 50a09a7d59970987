// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is nonzero if
// any criterion fails. `--seeds N` shortens the seed range for local iteration only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/dense.hpp"
#include "qcs/experiments/runner.hpp"
#include "qcs/quantum/evaluator.hpp"
#include "qcs/sim/engine.hpp"
#include "qcs/workload/spsa.hpp"

using namespace qcs;
using namespace qcs::experiments;

namespace {

int failures = 0;

void report(bool ok, const char* id, const std::string& name, const std::string& detail) {
    std::printf("%s %s %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

struct ModeStats {
    std::vector<double> ttns, qdc;
    int drift = 0;
    int runs = 0;
    int converged = 0;
};

// Integrity checks accumulated over every simulated run.
struct RunAudit {
    std::size_t runs = 0;
    std::size_t replay_failures = 0;
    std::size_t identity_failures = 0;
    std::size_t records = 0;
    std::size_t future_failures = 0;
    std::size_t drift_count_mismatches = 0;
    std::string first_problem;

    void check(const RunResult& r, int n_qpu) {
        ++runs;
        if (auto err = resources::replay_transition_log(r.transitions, n_qpu); !err.empty()) {
            ++replay_failures;
            if (first_problem.empty()) first_problem = r.summary.run_id + ": " + err;
        }
        for (const auto& rec : r.iterations) {
            ++records;
            if (!metrics::ttns_identity_holds(rec, 1e-6)) ++identity_failures;
        }
        if (r.future_states.size() != r.iterations.size()) ++future_failures;
        for (auto s : r.future_states)
            if (s != workload::FutureState::Committed) ++future_failures;
        if (r.summary.drift_events != static_cast<int>(r.drift_events.size())) ++drift_count_mismatches;
    }
};

std::vector<std::uint64_t> seed_range(std::uint64_t n) {
    std::vector<std::uint64_t> s;
    for (std::uint64_t i = 0; i < n; ++i) s.push_back(i);
    return s;
}

// Convergence-time ratios over (circuit, seed) pairs where both modes converged,
// plus the censored comparison that counts misses at the horizon.
struct Speedup {
    double matched = 0.0;
    std::size_t pairs = 0;
    double censored = 0.0;
};

Speedup speedup(const std::vector<metrics::RunSummary>& all, const std::string& fast, const std::string& slow,
                double horizon) {
    std::map<std::pair<std::string, std::uint64_t>, std::map<std::string, const metrics::RunSummary*>> by_pair;
    for (const auto& s : all) by_pair[{s.circuit_id, s.seed}][s.mode] = &s;
    std::vector<double> f, sl, fc, sc;
    for (const auto& [key, modes] : by_pair) {
        const auto a = modes.find(fast), b = modes.find(slow);
        if (a == modes.end() || b == modes.end()) continue;
        fc.push_back(a->second->convergence_time.value_or(horizon));
        sc.push_back(b->second->convergence_time.value_or(horizon));
        if (a->second->convergence_time && b->second->convergence_time) {
            f.push_back(*a->second->convergence_time);
            sl.push_back(*b->second->convergence_time);
        }
    }
    Speedup s;
    s.pairs = f.size();
    s.matched = f.empty() ? 0.0 : 1.0 - mean(f) / mean(sl);
    s.censored = fc.empty() ? 0.0 : 1.0 - mean(fc) / mean(sc);
    return s;
}

void baselines(const std::vector<std::uint64_t>& seeds, RunAudit& audit) {
    const ExperimentConfig cfg;
    std::map<std::string, ModeStats> stats;
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = run_plan(baselines_plan(seeds), cfg, [&](const RunResult& r) {
        audit.check(r, cfg.n_qpu);
        auto& m = stats[r.summary.mode];
        m.ttns.push_back(r.summary.mean_ttns);
        m.qdc.push_back(r.summary.qdc);
        m.drift += r.summary.drift_events;
        ++m.runs;
        if (r.summary.convergence_time) ++m.converged;
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("# baselines: %zu runs in %.0f s\n", out.runs, secs);
    for (const auto& [mode, m] : stats)
        std::printf("#   %-6s ttns=%.3f qdc=%.2f%% drift=%d converged=%d/%d\n", mode.c_str(), mean(m.ttns),
                    100.0 * mean(m.qdc), m.drift, m.converged, m.runs);

    const double e = mean(stats["efaas"].ttns), sbq = mean(stats["sbq"].ttns), pf = mean(stats["pf"].ttns),
                 sr = mean(stats["sr"].ttns), pq = mean(stats["pq"].ttns);
    {
        const bool ranges = e >= 3.0 && e <= 4.2 && sbq >= 41 && sbq <= 56 && pf >= 46 && pf <= 63 && sr >= 3.5 &&
                            sr <= 5.0 && pq >= 3.4 && pq <= 4.8;
        const bool order = e < pq && pq < sr && sr < sbq && sbq < pf;
        report(ranges && order, "C1", "ttns per mode",
               "efaas=" + fmt("%.3f", e) + " pq=" + fmt("%.3f", pq) + " sr=" + fmt("%.3f", sr) +
                   " sbq=" + fmt("%.2f", sbq) + " pf=" + fmt("%.2f", pf) + (ranges ? " ranges ok" : " range miss") +
                   (order ? ", order ok" : ", order broken"));
    }
    {
        const double vs_sbq = 1.0 - e / sbq, vs_pf = 1.0 - e / pf;
        report(vs_sbq >= 0.88 && vs_pf >= 0.88, "C2", "ttns reduction",
               "vs sbq " + fmt("%.1f%%", 100 * vs_sbq) + ", vs pf " + fmt("%.1f%%", 100 * vs_pf));
    }
    {
        const double qe = 100 * mean(stats["efaas"].qdc), qsbq = 100 * mean(stats["sbq"].qdc),
                     qpf = 100 * mean(stats["pf"].qdc), qsr = 100 * mean(stats["sr"].qdc),
                     qpq = 100 * mean(stats["pq"].qdc);
        const bool in_range = qe >= 20 && qe <= 27;
        const bool gap_sbq = qe - qsbq >= 10;
        const bool gap_sr = qe - qsr >= 0.5 && qe - qsr <= 4;
        const bool highest = qe > qsbq && qe > qpf && qe > qsr && qe > qpq;
        report(in_range && gap_sbq && gap_sr && highest, "C3", "qdc",
               "efaas=" + fmt("%.2f", qe) + " sbq=" + fmt("%.2f", qsbq) + " pf=" + fmt("%.2f", qpf) +
                   " sr=" + fmt("%.2f", qsr) + " pq=" + fmt("%.2f", qpq) + " (efaas-sr=" + fmt("%.2f", qe - qsr) +
                   " pp)");
    }
    {
        const auto vs_sbq = speedup(out.summaries, "efaas", "sbq", cfg.horizon);
        const auto vs_pf = speedup(out.summaries, "efaas", "pf", cfg.horizon);
        const auto& m = stats["efaas"];
        const double rate = static_cast<double>(m.converged) / m.runs;
        report(vs_sbq.matched >= 0.80 && vs_pf.matched >= 0.85 && rate >= 0.95, "C4", "convergence",
               "speedup vs sbq " + fmt("%.1f%%", 100 * vs_sbq.matched) + " over " + std::to_string(vs_sbq.pairs) +
                   " pairs (censored " + fmt("%.1f%%", 100 * vs_sbq.censored) + "), vs pf " +
                   fmt("%.1f%%", 100 * vs_pf.matched) + " over " + std::to_string(vs_pf.pairs) + " pairs (censored " +
                   fmt("%.1f%%", 100 * vs_pf.censored) + "), efaas converged " + std::to_string(m.converged) + "/" +
                   std::to_string(m.runs));
    }
    {
        const int de = stats["efaas"].drift, dsr = stats["sr"].drift, dsbq = stats["sbq"].drift,
                  dpq = stats["pq"].drift, dpf = stats["pf"].drift;
        const bool counts = de <= 2 && dsr == 0 && dsbq >= 40 && dpq >= 40 && dpf >= 40;
        const bool order = dsbq >= 0.8 * dpq && dpq >= 0.8 * dpf;
        report(counts && order, "C5", "drift events",
               "efaas=" + std::to_string(de) + " sr=" + std::to_string(dsr) + " sbq=" + std::to_string(dsbq) +
                   " pq=" + std::to_string(dpq) + " pf=" + std::to_string(dpf));
    }
}

void ablation(const std::vector<std::uint64_t>& seeds, RunAudit& audit) {
    const ExperimentConfig cfg;
    const auto plan = ablation_plan(cfg, seeds);
    const auto out = run_plan(plan, cfg, [&](const RunResult& r) { audit.check(r, cfg.n_qpu); });
    std::map<std::string, std::vector<double>> conv, ttns, qdc;
    for (const auto& s : out.summaries) {
        conv[s.variant].push_back(s.convergence_time.value_or(cfg.horizon));
        ttns[s.variant].push_back(s.mean_ttns);
        qdc[s.variant].push_back(100 * s.qdc);
    }
    const double full = mean(conv["full"]);
    bool each_worse = true, flat = true;
    std::string worst;
    double worst_pen = -1e9;
    std::string detail;
    for (const auto& v : plan.variants) {
        const double pen = mean(conv[v.label]) / full - 1.0;
        const double t = mean(ttns[v.label]), q = mean(qdc[v.label]);
        detail += v.label + ": conv " + fmt("%.1f", mean(conv[v.label])) + " s (" + fmt("%+.1f%%", 100 * pen) +
                  "), ttns " + fmt("%.3f", t) + ", qdc " + fmt("%.2f", q) + "; ";
        if (std::abs(t - 3.50) > 0.25 || std::abs(q - 24.8) > 2.0) flat = false;
        if (v.label == "full") continue;
        if (!(pen > 0)) each_worse = false;
        if (pen > worst_pen) {
            worst_pen = pen;
            worst = v.label;
        }
    }
    const double beta_pen = mean(conv["beta=0"]) / full - 1.0;
    const double tau_pen = mean(conv["tau/2"]) / full - 1.0;
    const bool ok = each_worse && worst == "beta=0" && beta_pen >= 0.30 && tau_pen >= 0.15 && flat;
    report(ok, "C6", "ablation directionality", detail + "worst=" + worst);
}

void sensitivity(const std::vector<std::uint64_t>& seeds, RunAudit& audit) {
    const ExperimentConfig cfg;
    const auto plan = sensitivity_plan(seeds);
    const auto out = run_plan(plan, cfg, [&](const RunResult& r) { audit.check(r, cfg.n_qpu); });
    std::map<std::string, std::vector<double>> ttns;
    std::map<std::string, int> drift;
    for (const auto& s : out.summaries) {
        ttns[s.variant].push_back(s.mean_ttns);
        drift[s.variant] += s.drift_events;
    }
    double lo = 1e300, hi = -1e300, all = 0.0;
    int total_drift = 0;
    for (const auto& v : plan.variants) {
        const double m = mean(ttns[v.label]);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        all += m / static_cast<double>(plan.variants.size());
        total_drift += drift[v.label];
    }
    const double spread = (hi - lo) / all;
    report(spread <= 0.02 && total_drift == 0, "C7", "sensitivity flatness",
           std::to_string(plan.variants.size()) + " configs, ttns " + fmt("%.4f", lo) + ".." + fmt("%.4f", hi) +
               " (spread " + fmt("%.3f%%", 100 * spread) + "), drift penalties " + std::to_string(total_drift) +
               " (tau=60: " + std::to_string(drift["tau_drift=60"]) + ")");
}

void oracle_equivalence() {
    sim::RngStream rng(2024, "acceptance-oracle");
    double worst = 0.0;
    int cases = 0;
    for (int n = 2; n <= 8; ++n) {
        const int layers = 1 + n % 3;
        const quantum::AnsatzSpec ansatz{n, layers};
        const auto h = quantum::build_tfi(n, rng.uniform(0.5, 1.5));
        const auto dense = oracle::dense_hamiltonian(h);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> p(static_cast<std::size_t>(ansatz.parameter_count()));
            for (auto& x : p) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const double got = quantum::exact_expectation(ansatz, p, h);
            const double want = oracle::expectation(dense, oracle::ansatz_state(n, layers, p));
            worst = std::max(worst, std::abs(got - want));
            ++cases;
        }
    }

    const auto suite = workload::generate_suite();
    const auto& bench = suite.front();
    const double ground = oracle::ground_energy(bench.hamiltonian);
    const workload::SpsaConfig spsa;
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        sim::RngStream s(seed, "spsa");
        auto state = workload::initial_state(bench.ansatz.parameter_count(), s);
        for (int k = 0; k < 200; ++k) {
            const auto p = workload::perturb(state, spsa, s);
            state = workload::spsa_step(state, spsa, quantum::exact_expectation(bench.ansatz, p.plus, bench.hamiltonian),
                                        quantum::exact_expectation(bench.ansatz, p.minus, bench.hamiltonian));
            workload::record_energy(state, quantum::exact_expectation(bench.ansatz, state.theta, bench.hamiltonian));
        }
        if (state.best_energy < ground + 0.05) ++hits;
    }
    report(worst <= 1e-10 && hits >= 18, "C8", "oracle equivalence",
           std::to_string(cases) + " vectors for n=2..8, max |diff| " + fmt("%.2e", worst) + "; spsa on " + bench.id +
               " within 0.05 of " + fmt("%.6f", ground) + " for " + std::to_string(hits) + "/20 seeds");
}

bool queue_total_order() {
    sim::RngStream rng(5, "acceptance-queue");
    for (int trial = 0; trial < 200; ++trial) {
        sim::EventQueue q;
        for (int i = 0; i < 200; ++i) {
            sim::Event e;
            e.fire_at = std::floor(rng.uniform() * 20.0);
            e.payload = static_cast<std::uint64_t>(i);
            q.push(e);
        }
        sim::Event prev = q.pop();
        while (!q.empty()) {
            const sim::Event e = q.pop();
            if (e.fire_at < prev.fire_at || (e.fire_at == prev.fire_at && e.sequence <= prev.sequence)) return false;
            prev = e;
        }
    }
    return true;
}

bool future_lifecycle() {
    sim::RngStream rng(6, "acceptance-future");
    const quantum::EvalResult r{};
    auto rank = [](workload::FutureState s) {
        return s == workload::FutureState::Pending ? 0 : s == workload::FutureState::Resolved ? 1 : 2;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        workload::QuantumFuture f(0.0, 0.8);
        auto prev = f.state();
        for (int step = 0; step < 6; ++step) {
            try {
                switch (static_cast<int>(rng.uniform() * 4)) {
                    case 0: f.resolve(1.0, r, r); break;
                    case 1: f.commit(); break;
                    case 2: f.abort(); break;
                    default: f.speculate(0.3); break;
                }
            } catch (const sim::SimulationError&) {
            }
            if (rank(f.state()) < rank(prev) || (rank(prev) == 2 && f.state() != prev)) return false;
            prev = f.state();
        }
    }
    return true;
}

bool scaling_and_preemption() {
    sim::RngStream rng(7, "acceptance-dispatch");
    for (int trial = 0; trial < 2000; ++trial) {
        sched::SchedulerConfig cfg;
        cfg.alpha = rng.uniform(0.0, 200.0);
        cfg.beta = rng.uniform(0.0, 20.0);
        cfg.gamma = rng.uniform(0.0, 5.0);
        const double now = 1000.0;
        std::vector<sched::JobEntry> queue;
        for (std::uint64_t i = 0; i < 6; ++i) {
            sched::JobEntry j;
            j.id = j.enqueue_order = i;
            j.kind = i == 0 ? sched::JobKind::QuantumCircuit : sched::JobKind::BackgroundBatch;
            if (i == 0) {
                j.session = 0;
                j.hot = true;
                j.last_shot_end = now - rng.uniform(0.0, cfg.tau_drift);
            }
            j.enqueued_at = now - rng.uniform(0.0, 2000.0);
            j.weight = i == 0 ? 1.0 : rng.uniform(0.1, 2.0);
            queue.push_back(j);
        }
        const auto base = sched::pop_order(queue, now, cfg);
        auto scaled = cfg;
        const double k = std::exp(rng.uniform(-4.0, 4.0));
        scaled.alpha *= k;
        scaled.beta *= k;
        scaled.gamma *= k;
        if (sched::pop_order(queue, now, scaled).front() != base.front()) return false;
        const double margin = sched::preemption_margin(cfg, 1.0, 2.0);
        const double hot = sched::priority_score(queue[0], now, cfg);
        for (std::size_t i = 1; i < queue.size(); ++i)
            if (hot - sched::priority_score(queue[i], now, cfg) < margin - 1e-9) return false;
        if (margin > 0 && base.front() != 0) return false;
    }
    return true;
}

bool byte_identical_reruns() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "qcs_acceptance_determinism";
    fs::remove_all(root);
    SweepPlan plan = baselines_plan({0, 1, 2});
    plan.circuits = {"S01", "M10"};
    const ExperimentConfig cfg;
    run_experiment(plan, cfg, (root / "a").string());
    run_experiment(plan, cfg, (root / "b").string());
    bool same = true;
    for (const char* f : {"iterations.csv", "summaries.csv", "transitions.csv", "decisions.csv", "drift_events.csv",
                          "manifest.json"}) {
        std::ifstream a(root / "a" / f, std::ios::binary), b(root / "b" / f, std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        if (sa.str().empty() || sa.str() != sb.str()) same = false;
    }
    fs::remove_all(root);
    return same;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t n_seeds = 20;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--seeds") == 0) n_seeds = std::stoull(argv[i + 1]);
    const auto seeds = seed_range(n_seeds);
    if (n_seeds != 20) std::printf("# shortened run: %llu seeds\n", static_cast<unsigned long long>(n_seeds));

    RunAudit audit;
    baselines(seeds, audit);
    ablation(seeds, audit);
    sensitivity(seeds, audit);
    oracle_equivalence();

    const bool order = queue_total_order();
    const bool replay = audit.replay_failures == 0;
    const bool lifecycle = future_lifecycle() && audit.future_failures == 0;
    const bool dispatch = scaling_and_preemption();
    const bool identity = audit.identity_failures == 0 && audit.drift_count_mismatches == 0;
    const bool determinism = byte_identical_reruns();
    std::string detail = std::string("queue order ") + (order ? "ok" : "broken") + "; replay " +
                         std::to_string(audit.runs - audit.replay_failures) + "/" + std::to_string(audit.runs) +
                         " logs accepted; futures " + (lifecycle ? "monotone" : "violated") + "; scaling+preemption " +
                         (dispatch ? "ok" : "violated") + "; ttns identity " +
                         std::to_string(audit.records - audit.identity_failures) + "/" +
                         std::to_string(audit.records) + " records; determinism " +
                         (determinism ? "byte-identical" : "differs");
    if (!audit.first_problem.empty()) detail += "; first replay problem: " + audit.first_problem;
    report(order && replay && lifecycle && dispatch && identity && determinism, "C9", "property suites", detail);

    std::printf("# %d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
