#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcs/quantum/hamiltonian.hpp"
#include "qcs/quantum/statevector.hpp"

namespace qcs::workload {

enum class Band { Simple, Medium, Complex };

std::string_view band_name(Band band);

struct BandLimits {
    int count;
    int min_qubits, max_qubits;
    int min_depth, max_depth;
};

BandLimits band_limits(Band band);

struct CircuitBenchmark {
    std::string id;
    Band band = Band::Simple;
    int num_qubits = 2;
    int depth = 6;
    double field_strength = 1.0;
    quantum::AnsatzSpec ansatz;
    quantum::PauliHamiltonian hamiltonian;
};

inline constexpr std::uint64_t kDefaultSuiteSeed = 0;

// 31 benchmarks (10 Simple, 10 Medium, 11 Complex). Qubit counts and layer counts are
// spread evenly over each band; within a band the deepest ansatz goes to the narrowest
// register. The seed draws each circuit's transverse field from [0.5, 1.5].
std::vector<CircuitBenchmark> generate_suite(std::uint64_t seed = kDefaultSuiteSeed);

// JSON array of {id, band, qubits, depth, layers, field_strength}.
std::string suite_to_json(const std::vector<CircuitBenchmark>& suite);

}  // namespace qcs::workload
