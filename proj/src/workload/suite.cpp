#include "qcs/workload/suite.hpp"

#include <cmath>
#include <cctype>
#include <cstdio>
#include <json.hpp>

#include "qcs/sim/rng.hpp"

namespace qcs::workload {

std::string_view band_name(Band band) {
    switch (band) {
        case Band::Simple: return "simple";
        case Band::Medium: return "medium";
        case Band::Complex: return "complex";
    }
    return "?";
}

BandLimits band_limits(Band band) {
    switch (band) {
        case Band::Simple: return {10, 2, 5, 6, 32};
        case Band::Medium: return {10, 6, 10, 13, 69};
        case Band::Complex: return {11, 10, 16, 33, 141};
    }
    return {0, 0, 0, 0, 0};
}

namespace {

int spread(int lo, int hi, int index, int count) {
    if (count == 1) return lo;
    return lo + static_cast<int>(std::lround(static_cast<double>(index) * (hi - lo) / (count - 1)));
}

}  // namespace

std::vector<CircuitBenchmark> generate_suite(std::uint64_t seed) {
    sim::RngStream field_stream(seed, "suite-field");
    std::vector<CircuitBenchmark> suite;
    for (Band band : {Band::Simple, Band::Medium, Band::Complex}) {
        const BandLimits lim = band_limits(band);
        // depth = 3 * layers, so the layer range is the band's depth range divided by 3.
        const int min_layers = (lim.min_depth + 2) / 3;
        const int max_layers = lim.max_depth / 3;
        for (int i = 0; i < lim.count; ++i) {
            CircuitBenchmark b;
            char id[8];
            std::snprintf(id, sizeof id, "%c%02d", static_cast<char>(std::toupper(band_name(band)[0])), i + 1);
            b.id = id;
            b.band = band;
            b.num_qubits = spread(lim.min_qubits, lim.max_qubits, i, lim.count);
            const int layers = spread(min_layers, max_layers, lim.count - 1 - i, lim.count);
            b.ansatz = {b.num_qubits, layers};
            b.depth = b.ansatz.depth();
            b.field_strength = field_stream.uniform(0.5, 1.5);
            b.hamiltonian = quantum::build_tfi(b.num_qubits, b.field_strength);
            suite.push_back(std::move(b));
        }
    }
    return suite;
}

std::string suite_to_json(const std::vector<CircuitBenchmark>& suite) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& b : suite) {
        nlohmann::ordered_json j;
        j["id"] = b.id;
        j["band"] = band_name(b.band);
        j["qubits"] = b.num_qubits;
        j["depth"] = b.depth;
        j["layers"] = b.ansatz.num_layers;
        j["field_strength"] = b.field_strength;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

}  // namespace qcs::workload
