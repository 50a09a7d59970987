#include "qcs/experiments/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace qcs::experiments {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

bool parse_double(const std::string& s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

template <class Int>
bool parse_int(const std::string& s, Int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

struct Field {
    const char* name;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<bool(ExperimentConfig&, const std::string&)> set;
};

Field real(const char* name, double ExperimentConfig::*member) {
    return {name, [member](const ExperimentConfig& c) { return format_double(c.*member); },
            [member](ExperimentConfig& c, const std::string& v) { return parse_double(v, c.*member); }};
}

Field integer(const char* name, int ExperimentConfig::*member) {
    return {name, [member](const ExperimentConfig& c) { return std::to_string(c.*member); },
            [member](ExperimentConfig& c, const std::string& v) { return parse_int(v, c.*member); }};
}

Field boolean(const char* name, bool ExperimentConfig::*member) {
    return {name, [member](const ExperimentConfig& c) { return std::string(c.*member ? "true" : "false"); },
            [member](ExperimentConfig& c, const std::string& v) {
                if (v == "true" || v == "1") c.*member = true;
                else if (v == "false" || v == "0") c.*member = false;
                else return false;
                return true;
            }};
}

const std::vector<Field>& fields() {
    using C = ExperimentConfig;
    static const std::vector<Field> table = {
        real("horizon", &C::horizon),
        integer("n_qpu", &C::n_qpu),
        integer("n_classical", &C::n_classical),
        real("lognormal_mu", &C::lognormal_mu),
        real("lognormal_sigma", &C::lognormal_sigma),
        real("lambda", &C::lambda),
        real("bg_service_mean", &C::bg_service_mean),
        integer("shots", &C::shots),
        real("t_qpu", &C::t_qpu),
        real("t_qpu_jitter", &C::t_qpu_jitter),
        {"t_qpu_jitter_shape",
         [](const C& c) { return std::string(c.t_qpu_jitter_shape == JitterShape::Uniform ? "uniform" : "gaussian"); },
         [](C& c, const std::string& v) {
             if (v == "uniform") c.t_qpu_jitter_shape = JitterShape::Uniform;
             else if (v == "gaussian") c.t_qpu_jitter_shape = JitterShape::Gaussian;
             else return false;
             return true;
         }},
        real("t_cpu", &C::t_cpu),
        real("t_net", &C::t_net),
        real("t_async", &C::t_async),
        real("tau_drift", &C::tau_drift),
        real("t_calib", &C::t_calib),
        real("alpha", &C::alpha),
        real("beta", &C::beta),
        real("gamma", &C::gamma),
        real("epsilon_margin", &C::epsilon_margin),
        real("session_weight", &C::session_weight),
        real("background_weight", &C::background_weight),
        real("pq_startup", &C::pq_startup),
        real("pq_warm", &C::pq_warm),
        real("cold_start_overhead", &C::cold_start_overhead),
        integer("max_iter", &C::max_iter),
        real("spsa_a", &C::spsa_a),
        real("spsa_c", &C::spsa_c),
        real("spsa_big_a", &C::spsa_big_a),
        real("spsa_alpha", &C::spsa_alpha),
        real("spsa_gamma", &C::spsa_gamma),
        real("spsa_init_spread", &C::spsa_init_spread),
        integer("convergence_window", &C::convergence_window),
        real("convergence_epsilon", &C::convergence_epsilon),
        real("tau_decay", &C::tau_decay),
        boolean("recalibrate_on_drift", &C::recalibrate_on_drift),
        boolean("qdc_pool_normalized", &C::qdc_pool_normalized),
        boolean("qdc_count_background", &C::qdc_count_background),
        {"suite_seed", [](const C& c) { return std::to_string(c.suite_seed); },
         [](C& c, const std::string& v) { return parse_int(v, c.suite_seed); }},
    };
    return table;
}

std::string describe(const std::vector<FieldError>& errors) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e.field + ": " + e.message;
    return msg;
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : std::runtime_error(describe(errors)), errors_(std::move(errors)) {}

sched::SchedulerConfig ExperimentConfig::scheduler(ModeKind mode) const {
    sched::SchedulerConfig s;
    s.mode = mode;
    s.alpha = alpha;
    s.beta = beta;
    s.gamma = gamma;
    s.tau_drift = tau_drift;
    s.epsilon_margin = epsilon_margin;
    s.queue_mu = lognormal_mu;
    s.queue_sigma = lognormal_sigma;
    s.cold_start_overhead = cold_start_overhead;
    s.pq_startup = pq_startup;
    s.pq_warm = pq_warm;
    return s;
}

workload::SpsaConfig ExperimentConfig::spsa() const {
    return {spsa_a, spsa_c, spsa_big_a, spsa_alpha, spsa_gamma, max_iter};
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& f : fields()) {
        if (key != f.name) continue;
        if (!f.set(cfg, value)) throw ConfigError({{key, "cannot parse value '" + value + "'"}});
        return;
    }
    throw ConfigError({{key, "unknown key"}});
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::vector<FieldError> errors;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back({"line " + std::to_string(line_no), "expected key = value"});
            continue;
        }
        try {
            apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            errors.insert(errors.end(), e.errors().begin(), e.errors().end());
        }
    }
    const auto invalid = validate(cfg);
    errors.insert(errors.end(), invalid.begin(), invalid.end());
    if (!errors.empty()) throw ConfigError(errors);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError({{"config", "cannot open " + path}});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<FieldError> validate(const ExperimentConfig& c) {
    std::vector<FieldError> e;
    const auto need = [&](bool ok, const char* field, const char* msg) {
        if (!ok) e.push_back({field, msg});
    };
    need(c.horizon > 0, "horizon", "must be positive");
    need(c.n_qpu >= 1, "n_qpu", "must be at least 1");
    need(c.n_classical >= 1, "n_classical", "must be at least 1");
    need(c.lognormal_sigma > 0, "lognormal_sigma", "must be positive");
    need(c.lambda >= 0, "lambda", "must be non-negative");
    need(c.bg_service_mean > 0, "bg_service_mean", "must be positive");
    need(c.shots >= 1, "shots", "must be positive");
    need(c.t_qpu > 0, "t_qpu", "must be positive");
    need(c.t_qpu_jitter >= 0 && c.t_qpu_jitter < c.t_qpu, "t_qpu_jitter", "must lie in [0, t_qpu)");
    need(c.t_cpu >= 0, "t_cpu", "must be non-negative");
    need(c.t_net >= 0, "t_net", "must be non-negative");
    need(c.t_async >= 0, "t_async", "must be non-negative");
    need(c.tau_drift > 0, "tau_drift", "must be positive");
    need(c.t_calib >= 0, "t_calib", "must be non-negative");
    need(c.alpha >= 0, "alpha", "must be non-negative");
    need(c.beta >= 0, "beta", "must be non-negative");
    need(c.gamma >= 0, "gamma", "must be non-negative");
    need(c.epsilon_margin >= 0 && c.epsilon_margin < c.tau_drift, "epsilon_margin", "must lie in [0, tau_drift)");
    need(c.session_weight > 0, "session_weight", "must be positive");
    need(c.background_weight > 0, "background_weight", "must be positive");
    need(c.pq_startup >= 0, "pq_startup", "must be non-negative");
    need(c.pq_warm >= 0, "pq_warm", "must be non-negative");
    need(c.cold_start_overhead >= 0, "cold_start_overhead", "must be non-negative");
    need(c.max_iter >= 1, "max_iter", "must be at least 1");
    need(c.spsa_a > 0, "spsa_a", "must be positive");
    need(c.spsa_c > 0, "spsa_c", "must be positive");
    need(c.spsa_big_a >= 0, "spsa_big_a", "must be non-negative");
    need(c.spsa_alpha > 0, "spsa_alpha", "must be positive");
    need(c.spsa_gamma > 0, "spsa_gamma", "must be positive");
    need(c.spsa_init_spread >= 0, "spsa_init_spread", "must be non-negative");
    need(c.convergence_window >= 2, "convergence_window", "must be at least 2");
    need(c.convergence_epsilon > 0, "convergence_epsilon", "must be positive");
    need(c.tau_decay > 0, "tau_decay", "must be positive");
    return e;
}

std::string serialize(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) out += std::string(f.name) + " = " + f.get(cfg) + "\n";
    return out;
}

std::string config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) keys.emplace_back(f.name);
    return keys;
}

}  // namespace qcs::experiments
