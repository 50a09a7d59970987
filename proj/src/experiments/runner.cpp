#include "qcs/experiments/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <stdexcept>

#include "qcs/metrics/csv.hpp"

namespace qcs::experiments {

namespace fs = std::filesystem;

const char* to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::Baselines: return "baselines";
        case SweepKind::Ablation: return "ablation";
        case SweepKind::Sensitivity: return "sensitivity";
    }
    return "?";
}

SweepKind parse_sweep_kind(const std::string& text) {
    if (text == "baselines") return SweepKind::Baselines;
    if (text == "ablation") return SweepKind::Ablation;
    if (text == "sensitivity") return SweepKind::Sensitivity;
    throw std::invalid_argument("unknown sweep kind '" + text + "'");
}

std::vector<std::uint64_t> default_seeds() {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);
    return seeds;
}

SweepPlan baselines_plan(std::vector<std::uint64_t> seeds) {
    return {SweepKind::Baselines, {{"default", {}}}, std::move(seeds), {std::begin(kAllModes), std::end(kAllModes)}, {}};
}

SweepPlan ablation_plan(const ExperimentConfig& base, std::vector<std::uint64_t> seeds) {
    SweepPlan plan{SweepKind::Ablation, {}, std::move(seeds), {ModeKind::EFaaS}, {kStudyCircuit}};
    plan.variants = {
        {"full", {}},
        {"beta=0", {{"beta", "0"}}},
        {"gamma=0", {{"gamma", "0"}}},
        {"alpha=0", {{"alpha", "0"}}},
        {"tau/2", {{"tau_drift", metrics::format_number(base.tau_drift / 2.0)}}},
    };
    return plan;
}

SweepPlan sensitivity_plan(std::vector<std::uint64_t> seeds) {
    SweepPlan plan{SweepKind::Sensitivity, {}, std::move(seeds), {ModeKind::EFaaS}, {kStudyCircuit}};
    const std::vector<std::pair<std::string, std::vector<std::string>>> axes = {
        {"alpha", {"0", "10", "50", "100", "200"}},
        {"beta", {"0", "1", "5", "10", "20"}},
        {"gamma", {"0.1", "0.5", "1", "2", "5"}},
        {"tau_drift", {"60", "150", "300", "600", "900"}},
    };
    for (const auto& [key, values] : axes)
        for (const auto& v : values) plan.variants.push_back({key + "=" + v, {{key, v}}});
    return plan;
}

std::vector<std::string> select_circuits(const std::vector<workload::CircuitBenchmark>& suite,
                                         const std::string& which) {
    std::vector<std::string> ids;
    for (const auto& b : suite)
        if (which == "all" || workload::band_name(b.band) == which) ids.push_back(b.id);
    if (ids.empty()) throw std::invalid_argument("no circuits match '" + which + "'");
    return ids;
}

ExperimentConfig variant_config(const ExperimentConfig& base, const Variant& variant) {
    ExperimentConfig cfg = base;
    for (const auto& [key, value] : variant.overrides) apply_override(cfg, key, value);
    if (auto errors = validate(cfg); !errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

ExperimentOutput run_plan(const SweepPlan& plan, const ExperimentConfig& base, const RunCallback& on_run) {
    if (plan.variants.empty() || plan.seeds.empty() || plan.modes.empty())
        throw std::invalid_argument("sweep plan needs variants, seeds and modes");

    // Validate every variant before the first run.
    std::vector<ExperimentConfig> configs;
    for (const auto& v : plan.variants) configs.push_back(variant_config(base, v));

    ExperimentOutput out;
    for (std::size_t vi = 0; vi < plan.variants.size(); ++vi) {
        const auto& cfg = configs[vi];
        const auto suite = workload::generate_suite(cfg.suite_seed);
        std::vector<const workload::CircuitBenchmark*> circuits;
        if (plan.circuits.empty()) {
            for (const auto& b : suite) circuits.push_back(&b);
        } else {
            for (const auto& id : plan.circuits) {
                auto it = std::find_if(suite.begin(), suite.end(), [&](const auto& b) { return b.id == id; });
                if (it == suite.end()) throw std::invalid_argument("unknown circuit '" + id + "'");
                circuits.push_back(&*it);
            }
        }
        for (const auto* circuit : circuits) {
            for (auto seed : plan.seeds) {
                auto memo = std::make_shared<quantum::EnergyCache>();
                for (auto mode : plan.modes) {
                    RunSpec spec{circuit, mode, seed, cfg, plan.variants[vi].label, memo};
                    RunResult r = simulate(spec);
                    out.summaries.push_back(r.summary);
                    ++out.runs;
                    if (on_run) on_run(r);
                }
            }
        }
    }
    return out;
}

namespace {

nlohmann::ordered_json manifest(const SweepPlan& plan, const ExperimentConfig& base, bool complete,
                                std::size_t runs) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(plan.kind);
    j["complete"] = complete;
    j["runs"] = runs;
    j["seeds"] = plan.seeds;
    auto& modes = j["modes"] = nlohmann::ordered_json::array();
    for (auto m : plan.modes) modes.push_back(std::string(mode_name(m)));
    j["circuits"] = plan.circuits;
    auto& variants = j["variants"] = nlohmann::ordered_json::array();
    for (const auto& v : plan.variants) {
        const auto cfg = variant_config(base, v);
        nlohmann::ordered_json entry;
        entry["label"] = v.label;
        entry["config_hash"] = config_hash(cfg);
        auto& overrides = entry["overrides"] = nlohmann::ordered_json::object();
        for (const auto& [key, value] : v.overrides) overrides[key] = value;
        entry["config"] = serialize(cfg);
        variants.push_back(std::move(entry));
    }
    j["base_config_hash"] = config_hash(base);
    j["base_config"] = serialize(base);
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
}

}  // namespace

ExperimentOutput run_experiment(const SweepPlan& plan, const ExperimentConfig& base, const std::string& out_dir) {
    for (const auto& v : plan.variants) variant_config(base, v);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_text(dir / "manifest.json", manifest(plan, base, false, 0).dump(2) + "\n");
    write_text(dir / "suite.json", workload::suite_to_json(workload::generate_suite(base.suite_seed)) + "\n");

    auto open = [&](const char* name) {
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
        return os;
    };
    auto iterations = open("iterations.csv");
    auto transitions = open("transitions.csv");
    auto decisions = open("decisions.csv");
    auto drift = open("drift_events.csv");
    bool first = true;

    auto out = run_plan(plan, base, [&](const RunResult& r) {
        const auto& id = r.summary.run_id;
        metrics::write_iterations(iterations, r.iterations, r.config_hash, first);
        metrics::write_transitions(transitions, id, r.transitions, r.config_hash, first);
        metrics::write_decisions(decisions, id, r.decisions, r.config_hash, first);
        metrics::write_drift_events(drift, id, r.drift_events, r.config_hash, first);
        first = false;
    });

    auto summaries = open("summaries.csv");
    metrics::write_summaries(summaries, out.summaries);
    write_text(dir / "manifest.json", manifest(plan, base, true, out.runs).dump(2) + "\n");
    return out;
}

}  // namespace qcs::experiments
