#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace qcs::sim {

// Mixes a global seed with a stream label into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view name);

// Named random stream. Transforms are written out explicitly so draws do not depend
// on the standard library's distribution implementations.
class RngStream {
public:
    RngStream(std::uint64_t global_seed, std::string name);

    [[nodiscard]] const std::string& name() const { return name_; }

    double uniform();                 // [0, 1)
    double uniform(double lo, double hi);
    double normal();                  // standard normal
    int rademacher();                 // +1 or -1

private:
    std::string name_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

double sample_lognormal(RngStream& stream, double mu, double sigma);
double sample_exponential(RngStream& stream, double mean);

}  // namespace qcs::sim
