#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qcs/experiments/runner.hpp"
#include "qcs/metrics/csv.hpp"

using namespace qcs;
using namespace qcs::experiments;

namespace {

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw std::invalid_argument("bad seed '" + text + "'");
    return v;
}

// "A..B" inclusive, or a single number.
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return {parse_u64(text)};
    const auto lo = parse_u64(text.substr(0, dots));
    const auto hi = parse_u64(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty seed range '" + text + "'");
    std::vector<std::uint64_t> seeds;
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
}

struct CommonOptions {
    std::string config_file;
    std::vector<std::string> sets;
    std::string seeds;
    std::uint64_t seed = 0;
    bool single_seed = false;
};

ExperimentConfig resolve_config(const CommonOptions& o) {
    ExperimentConfig cfg = o.config_file.empty() ? ExperimentConfig{} : load_config(o.config_file);
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError({{kv, "expected key=value"}});
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (auto errors = validate(cfg); !errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

void print_table(const ExperimentOutput& out) {
    const auto rows = metrics::aggregate(out.summaries, metrics::GroupBy::Variant);
    for (const auto& variant : rows) {
        std::vector<metrics::RunSummary> subset;
        for (const auto& s : out.summaries)
            if (s.variant == variant.key) subset.push_back(s);
        std::printf("%s (%zu runs)\n", variant.key.c_str(), variant.runs);
        std::printf("  %-6s %10s %8s %10s %8s %6s\n", "mode", "ttns_s", "qdc_%", "conv_s", "conv", "drift");
        for (const auto& m : metrics::aggregate(subset, metrics::GroupBy::Mode)) {
            const auto drift = m.metrics.at("drift_events").mean * static_cast<double>(m.runs);
            const auto conv = m.metrics.find("convergence_time");
            std::printf("  %-6s %10.3f %8.2f %10.1f %4zu/%-3zu %6.0f\n", m.key.c_str(), m.metrics.at("mean_ttns").mean,
                        100.0 * m.metrics.at("qdc").mean, conv != m.metrics.end() ? conv->second.mean : 0.0,
                        m.converged, m.runs, drift);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator of variational quantum workloads under cloud scheduling modes"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_file, "Flat key = value config file")->check(CLI::ExistingFile);
        sub->add_option("--set", common.sets, "Override one config field (key=value); repeatable");
    };

    std::string mode = "all", circuits = "all", out_dir = "results";
    auto* run = app.add_subcommand("run", "Run one or all modes over a set of circuits");
    run->add_option("--mode", mode, "efaas|sbq|pf|sr|pq|all")->capture_default_str();
    run->add_option("--circuits", circuits, "simple|medium|complex|all or a circuit id")->capture_default_str();
    auto* seed_opt = run->add_option("--seed", common.seed, "Single seed");
    run->add_option("--seeds", common.seeds, "Inclusive seed range A..B (default 0..19)")->excludes(seed_opt);
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    add_common(run);

    std::string kind = "baselines", sweep_circuits;
    auto* sweep = app.add_subcommand("sweep", "Run a predefined study");
    sweep->add_option("--kind", kind, "baselines|ablation|sensitivity")
        ->check(CLI::IsMember({"baselines", "ablation", "sensitivity"}))
        ->capture_default_str();
    sweep->add_option("--seeds", common.seeds, "Inclusive seed range A..B (default 0..19)");
    sweep->add_option("--circuits", sweep_circuits, "Restrict to a band, 'all' or a circuit id");
    sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();
    add_common(sweep);

    bool print_resolved = false;
    auto* check = app.add_subcommand("validate-config", "Validate a config (defaults when no file is given)");
    check->add_flag("--print", print_resolved, "Print the resolved config");
    add_common(check);

    std::uint64_t suite_seed = workload::kDefaultSuiteSeed;
    auto* suite_cmd = app.add_subcommand("print-suite", "Print the benchmark suite as JSON");
    suite_cmd->add_option("--suite-seed", suite_seed, "Seed of the transverse-field draws")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    common.single_seed = seed_opt->count() > 0;

    try {
        if (*suite_cmd) {
            std::cout << workload::suite_to_json(workload::generate_suite(suite_seed)) << "\n";
            return 0;
        }
        const ExperimentConfig cfg = resolve_config(common);
        if (*check) {
            if (print_resolved) std::cout << serialize(cfg);
            std::cout << "config ok (hash " << config_hash(cfg) << ")\n";
            return 0;
        }
        const auto seeds = common.single_seed      ? std::vector<std::uint64_t>{common.seed}
                           : common.seeds.empty() ? default_seeds()
                                                   : parse_seed_range(common.seeds);
        const auto suite = workload::generate_suite(cfg.suite_seed);
        auto pick = [&](const std::string& which) {
            for (const auto& b : suite)
                if (b.id == which) return std::vector<std::string>{which};
            return select_circuits(suite, which);
        };

        SweepPlan plan;
        if (*run) {
            plan = baselines_plan(seeds);
            if (mode != "all") {
                const auto m = parse_mode(mode);
                if (!m) throw std::invalid_argument("unknown mode '" + mode + "'");
                plan.modes = {*m};
            }
            plan.circuits = pick(circuits);
        } else {
            const auto k = parse_sweep_kind(kind);
            plan = k == SweepKind::Baselines ? baselines_plan(seeds)
                   : k == SweepKind::Ablation ? ablation_plan(cfg, seeds)
                                              : sensitivity_plan(seeds);
            if (!sweep_circuits.empty()) plan.circuits = pick(sweep_circuits);
        }
        const auto out = run_experiment(plan, cfg, out_dir);
        print_table(out);
        std::printf("%zu runs written to %s\n", out.runs, out_dir.c_str());
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n" << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
