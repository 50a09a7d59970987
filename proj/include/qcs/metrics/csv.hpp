#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcs/metrics/metrics.hpp"
#include "qcs/resources/qpu.hpp"

namespace qcs::metrics {

// Header rows are fixed; the plotting layer reads these names.
extern const char* const kIterationsHeader;
extern const char* const kSummariesHeader;
extern const char* const kTransitionsHeader;
extern const char* const kDecisionsHeader;
extern const char* const kDriftHeader;

std::string format_number(double value);

void write_iterations(std::ostream& os, const std::vector<IterationRecord>& rows, const std::string& config_hash,
                      bool header = true);
void write_summaries(std::ostream& os, const std::vector<RunSummary>& rows, bool header = true);
void write_transitions(std::ostream& os, const std::string& run_id, const std::vector<resources::TransitionRecord>& rows,
                       const std::string& config_hash, bool header = true);
void write_decisions(std::ostream& os, const std::string& run_id, const std::vector<DecisionRecord>& rows,
                     const std::string& config_hash, bool header = true);
void write_drift_events(std::ostream& os, const std::string& run_id, const std::vector<DriftEvent>& rows,
                        const std::string& config_hash, bool header = true);
void write_aggregate(std::ostream& os, const std::vector<GroupRow>& rows);

// Minimal reader for the files above: header names plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    [[nodiscard]] std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
std::vector<RunSummary> parse_summaries(const CsvTable& table);

}  // namespace qcs::metrics
