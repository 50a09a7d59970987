#pragma once

#include <vector>

#include "qcs/sim/engine.hpp"
#include "qcs/sim/rng.hpp"

namespace qcs::resources {

struct BackgroundJob {
    sim::Seconds arrival = 0.0;
    sim::Seconds service_time = 0.0;
};

// Poisson arrivals on [0, horizon) with exponential service times.
std::vector<BackgroundJob> generate_background(sim::RngStream& stream, sim::Seconds horizon, double lambda_rate,
                                               sim::Seconds mean_service);

}  // namespace qcs::resources
