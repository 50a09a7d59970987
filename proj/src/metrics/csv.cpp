#include "qcs/metrics/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qcs::metrics {

const char* const kIterationsHeader =
    "run_id,circuit_id,band,mode,iteration,ttns,queue_delay,calib_time,qpu_time,residual_cpu_block,energy,"
    "drift_event,timestamp,net_time,exact_energy,fidelity,qpu_id,config_hash";
const char* const kSummariesHeader =
    "mode,circuit_id,mean_ttns,ttns_p25,ttns_p50,ttns_p75,qdc,convergence_time,iterations_completed,drift_events,"
    "calib_overhead_fraction,seed,run_id,variant,band,qubits,calibrations,final_energy,best_energy,stop_reason,"
    "max_background_wait,config_hash";
const char* const kTransitionsHeader = "time,qpu_id,from,to,trigger,run_id,config_hash";
const char* const kDecisionsHeader =
    "time,job,mode,rho,qpu,queue_delay,drift_triggered,kind,calibration,run_id,config_hash";
const char* const kDriftHeader = "time,qpu_id,session,source,run_id,config_hash";

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

namespace {

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

void write_iterations(std::ostream& os, const std::vector<IterationRecord>& rows, const std::string& config_hash,
                      bool header) {
    if (header) os << kIterationsHeader << '\n';
    for (const auto& r : rows) {
        os << r.run_id << ',' << r.circuit_id << ',' << r.band << ',' << r.mode << ',' << r.iteration << ','
           << format_number(r.ttns) << ',' << format_number(r.queue_delay) << ',' << format_number(r.calib_time) << ','
           << format_number(r.qpu_time) << ',' << format_number(r.residual_cpu_block) << ','
           << format_number(r.energy) << ',' << flag(r.drift_event) << ',' << format_number(r.timestamp) << ','
           << format_number(r.net_time) << ',' << format_number(r.exact_energy) << ',' << format_number(r.fidelity)
           << ',' << r.qpu_id << ',' << config_hash << '\n';
    }
}

void write_summaries(std::ostream& os, const std::vector<RunSummary>& rows, bool header) {
    if (header) os << kSummariesHeader << '\n';
    for (const auto& s : rows) {
        os << s.mode << ',' << s.circuit_id << ',' << format_number(s.mean_ttns) << ',' << format_number(s.ttns_p25)
           << ',' << format_number(s.ttns_p50) << ',' << format_number(s.ttns_p75) << ',' << format_number(s.qdc)
           << ',' << (s.convergence_time ? format_number(*s.convergence_time) : std::string("DidNotConverge")) << ','
           << s.iterations_completed << ',' << s.drift_events << ',' << format_number(s.calib_overhead_fraction)
           << ',' << s.seed << ',' << s.run_id << ',' << s.variant << ',' << s.band << ',' << s.qubits << ','
           << s.calibrations << ',' << format_number(s.final_energy) << ',' << format_number(s.best_energy) << ','
           << s.stop_reason << ',' << format_number(s.max_background_wait) << ',' << s.config_hash << '\n';
    }
}

void write_transitions(std::ostream& os, const std::string& run_id, const std::vector<resources::TransitionRecord>& rows,
                       const std::string& config_hash, bool header) {
    if (header) os << kTransitionsHeader << '\n';
    for (const auto& r : rows)
        os << format_number(r.time) << ',' << r.qpu_id << ',' << resources::to_string(r.from) << ','
           << resources::to_string(r.to) << ',' << resources::to_string(r.trigger) << ',' << run_id << ','
           << config_hash << '\n';
}

void write_decisions(std::ostream& os, const std::string& run_id, const std::vector<DecisionRecord>& rows,
                     const std::string& config_hash, bool header) {
    if (header) os << kDecisionsHeader << '\n';
    for (const auto& r : rows)
        os << format_number(r.time) << ',' << r.job << ',' << r.mode << ',' << format_number(r.rho) << ','
           << r.resource << ',' << format_number(r.queue_delay) << ',' << flag(r.drift_triggered) << ',' << r.kind
           << ',' << r.calibration << ',' << run_id << ',' << config_hash << '\n';
}

void write_drift_events(std::ostream& os, const std::string& run_id, const std::vector<DriftEvent>& rows,
                        const std::string& config_hash, bool header) {
    if (header) os << kDriftHeader << '\n';
    for (const auto& r : rows)
        os << format_number(r.time) << ',' << r.qpu_id << ',' << r.session << ',' << r.source << ',' << run_id << ','
           << config_hash << '\n';
}

void write_aggregate(std::ostream& os, const std::vector<GroupRow>& rows) {
    os << "group,runs,converged,metric,mean,std,p25,p50,p75,count\n";
    for (const auto& row : rows)
        for (const auto& [name, s] : row.metrics)
            os << row.key << ',' << row.runs << ',' << row.converged << ',' << name << ',' << format_number(s.mean)
               << ',' << format_number(s.std) << ',' << format_number(s.p25) << ',' << format_number(s.p50) << ','
               << format_number(s.p75) << ',' << s.count << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::invalid_argument("missing column: " + name);
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) return t;
    t.header = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != t.header.size()) throw std::invalid_argument("ragged csv row: " + line);
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::vector<RunSummary> parse_summaries(const CsvTable& table) {
    std::vector<RunSummary> out;
    const auto col = [&](const char* name) { return table.column(name); };
    for (const auto& r : table.rows) {
        RunSummary s;
        s.mode = r[col("mode")];
        s.circuit_id = r[col("circuit_id")];
        s.mean_ttns = std::stod(r[col("mean_ttns")]);
        s.ttns_p25 = std::stod(r[col("ttns_p25")]);
        s.ttns_p50 = std::stod(r[col("ttns_p50")]);
        s.ttns_p75 = std::stod(r[col("ttns_p75")]);
        s.qdc = std::stod(r[col("qdc")]);
        const auto& conv = r[col("convergence_time")];
        if (conv != "DidNotConverge") s.convergence_time = std::stod(conv);
        s.iterations_completed = std::stoi(r[col("iterations_completed")]);
        s.drift_events = std::stoi(r[col("drift_events")]);
        s.calib_overhead_fraction = std::stod(r[col("calib_overhead_fraction")]);
        s.seed = std::stoull(r[col("seed")]);
        s.run_id = r[col("run_id")];
        s.variant = r[col("variant")];
        s.band = r[col("band")];
        s.qubits = std::stoi(r[col("qubits")]);
        s.calibrations = std::stoi(r[col("calibrations")]);
        s.final_energy = std::stod(r[col("final_energy")]);
        s.best_energy = std::stod(r[col("best_energy")]);
        s.stop_reason = r[col("stop_reason")];
        s.max_background_wait = std::stod(r[col("max_background_wait")]);
        s.config_hash = r[col("config_hash")];
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace qcs::metrics
