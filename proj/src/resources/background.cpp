#include "qcs/resources/background.hpp"

#include <stdexcept>

namespace qcs::resources {

std::vector<BackgroundJob> generate_background(sim::RngStream& stream, sim::Seconds horizon, double lambda_rate,
                                               sim::Seconds mean_service) {
    if (lambda_rate < 0.0) throw std::invalid_argument("background rate must be non-negative");
    std::vector<BackgroundJob> jobs;
    if (lambda_rate == 0.0) return jobs;
    sim::Seconds t = 0.0;
    while (true) {
        t += sim::sample_exponential(stream, 1.0 / lambda_rate);
        if (t >= horizon) break;
        jobs.push_back({t, sim::sample_exponential(stream, mean_service)});
    }
    return jobs;
}

}  // namespace qcs::resources
