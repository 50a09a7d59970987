#include "qcs/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcs::metrics {

double compute_qdc(const std::vector<ShotInterval>& intervals, int num_qpus, Seconds horizon) {
    if (num_qpus < 1 || !(horizon > 0.0)) throw std::invalid_argument("qdc needs positive pool size and horizon");
    double busy = 0.0;
    for (const auto& iv : intervals) {
        if (iv.start < 0.0 || iv.end > horizon || iv.end < iv.start)
            throw std::invalid_argument("shot interval outside [0, horizon]");
        busy += iv.end - iv.start;
    }
    return busy / (static_cast<double>(num_qpus) * horizon);
}

std::optional<Seconds> convergence_time(const std::vector<IterationRecord>& records, int window, double epsilon,
                                        Seconds submitted_at) {
    if (window < 2) throw std::invalid_argument("convergence window must be at least 2");
    for (std::size_t i = static_cast<std::size_t>(window) - 1; i < records.size(); ++i) {
        double lo = records[i].exact_energy, hi = lo;
        for (std::size_t j = i + 1 - static_cast<std::size_t>(window); j <= i; ++j) {
            lo = std::min(lo, records[j].exact_energy);
            hi = std::max(hi, records[j].exact_energy);
        }
        if (hi - lo < epsilon) return records[i].timestamp - submitted_at;
    }
    return std::nullopt;
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

Stats describe(const std::vector<double>& values) {
    Stats s;
    s.count = values.size();
    if (values.empty()) return s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    s.p25 = percentile(values, 0.25);
    s.p50 = percentile(values, 0.50);
    s.p75 = percentile(values, 0.75);
    return s;
}

namespace {

std::string group_key(const RunSummary& s, GroupBy g) {
    switch (g) {
        case GroupBy::Mode: return s.mode;
        case GroupBy::Band: return s.band;
        case GroupBy::Qubits: return std::to_string(s.qubits);
        case GroupBy::Variant: return s.variant;
        case GroupBy::ModeBand: return s.mode + "/" + s.band;
    }
    return {};
}

}  // namespace

std::vector<GroupRow> aggregate(const std::vector<RunSummary>& summaries, GroupBy group_by) {
    if (summaries.empty()) throw std::invalid_argument("aggregate needs at least one summary");
    std::map<std::string, std::vector<const RunSummary*>> groups;
    for (const auto& s : summaries) groups[group_key(s, group_by)].push_back(&s);

    std::vector<GroupRow> rows;
    for (const auto& [key, members] : groups) {
        const std::string& hash = members.front()->config_hash;
        for (const auto* m : members)
            if (m->config_hash != hash)
                throw std::invalid_argument("group '" + key + "' mixes runs from different configs");
        GroupRow row;
        row.key = key;
        row.runs = members.size();
        std::map<std::string, std::vector<double>> columns;
        for (const auto* m : members) {
            columns["mean_ttns"].push_back(m->mean_ttns);
            columns["ttns_p50"].push_back(m->ttns_p50);
            columns["qdc"].push_back(m->qdc);
            columns["iterations_completed"].push_back(m->iterations_completed);
            columns["drift_events"].push_back(m->drift_events);
            columns["calib_overhead_fraction"].push_back(m->calib_overhead_fraction);
            columns["final_energy"].push_back(m->final_energy);
            if (m->convergence_time) {
                columns["convergence_time"].push_back(*m->convergence_time);
                ++row.converged;
            }
        }
        for (const auto& [name, values] : columns) row.metrics[name] = describe(values);
        rows.push_back(std::move(row));
    }
    if (group_by == GroupBy::Qubits) {
        std::sort(rows.begin(), rows.end(),
                  [](const GroupRow& a, const GroupRow& b) { return std::stoi(a.key) < std::stoi(b.key); });
    }
    return rows;
}

double censored_mean_convergence(const std::vector<RunSummary>& summaries, Seconds horizon) {
    if (summaries.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : summaries) sum += s.convergence_time.value_or(horizon);
    return sum / static_cast<double>(summaries.size());
}

bool ttns_identity_holds(const IterationRecord& r, double tolerance) {
    const double parts = r.residual_cpu_block + r.queue_delay + r.calib_time + r.net_time + r.qpu_time;
    return std::abs(parts - r.ttns) <= tolerance;
}

}  // namespace qcs::metrics
