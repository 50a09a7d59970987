#include "qcs/sim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcs::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view name) {
    return splitmix64(splitmix64(global_seed) ^ fnv1a(name));
}

RngStream::RngStream(std::uint64_t global_seed, std::string name)
    : name_(std::move(name)), engine_(derive_seed(global_seed, name_)) {}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

int RngStream::rademacher() { return (engine_() >> 63) != 0 ? 1 : -1; }

double sample_lognormal(RngStream& stream, double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("lognormal sigma must be positive");
    return std::exp(mu + sigma * stream.normal());
}

double sample_exponential(RngStream& stream, double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be positive");
    // 1 - u lies in (0, 1], so the log is finite and the draw is non-negative.
    double u = 1.0 - stream.uniform();
    double x = -mean * std::log(u);
    while (x <= 0.0) {
        u = 1.0 - stream.uniform();
        x = -mean * std::log(u);
    }
    return x;
}

}  // namespace qcs::sim
