#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcs/experiments/config.hpp"
#include "qcs/experiments/simulation.hpp"
#include "qcs/mode.hpp"
#include "qcs/workload/suite.hpp"

namespace qcs::experiments {

enum class SweepKind { Baselines, Ablation, Sensitivity };

const char* to_string(SweepKind kind);
SweepKind parse_sweep_kind(const std::string& text);

struct Variant {
    std::string label;
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct SweepPlan {
    SweepKind kind = SweepKind::Baselines;
    std::vector<Variant> variants;
    std::vector<std::uint64_t> seeds;
    std::vector<ModeKind> modes;
    // Circuit ids to run; empty means the whole suite.
    std::vector<std::string> circuits;
};

std::vector<std::uint64_t> default_seeds();  // 0..19
// Circuit used by the single-benchmark studies: the first 2-qubit entry of the suite.
inline constexpr const char* kStudyCircuit = "S01";

SweepPlan baselines_plan(std::vector<std::uint64_t> seeds = default_seeds());
// full, beta=0, gamma=0, alpha=0, tau/2 on EFaaS.
SweepPlan ablation_plan(const ExperimentConfig& base, std::vector<std::uint64_t> seeds = default_seeds());
// One-at-a-time sweeps of alpha, beta, gamma and tau_drift on EFaaS.
SweepPlan sensitivity_plan(std::vector<std::uint64_t> seeds = default_seeds());

// Ids of the circuits in a band ("simple", "medium", "complex") or "all".
std::vector<std::string> select_circuits(const std::vector<workload::CircuitBenchmark>& suite,
                                         const std::string& which);

// Resolved config of one variant; throws ConfigError.
ExperimentConfig variant_config(const ExperimentConfig& base, const Variant& variant);

struct ExperimentOutput {
    std::vector<metrics::RunSummary> summaries;
    std::size_t runs = 0;
};

using RunCallback = std::function<void(const RunResult&)>;

// Runs every (variant, circuit, seed, mode) of the plan in that nesting order. Modes of
// one (circuit, seed) share an energy memo. Results stream to `on_run` when given.
ExperimentOutput run_plan(const SweepPlan& plan, const ExperimentConfig& base, const RunCallback& on_run = {});

// run_plan plus the output directory: iterations.csv, summaries.csv, transitions.csv,
// decisions.csv, drift_events.csv, suite.json and manifest.json. The manifest is
// written first with "complete": false and rewritten at the end.
ExperimentOutput run_experiment(const SweepPlan& plan, const ExperimentConfig& base, const std::string& out_dir);

}  // namespace qcs::experiments
