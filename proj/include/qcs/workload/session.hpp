#pragma once

#include <optional>

#include "qcs/mode.hpp"
#include "qcs/sim/engine.hpp"
#include "qcs/workload/spsa.hpp"
#include "qcs/workload/suite.hpp"

namespace qcs::workload {

struct VqaSession {
    int id = 0;
    const CircuitBenchmark* benchmark = nullptr;
    SpsaState spsa;
    bool hot = false;  // E_s: session context is cached on a QPU
    std::optional<int> bound_qpu;
    std::optional<sim::Seconds> last_shot_end;
    std::optional<sim::Seconds> converged_at;
    double weight = 1.0;
};

// Classical time on the critical path before the next submission. Under EFaaS the
// speculative work done while the previous shot ran is subtracted; the first
// iteration has no earlier shot to overlap with.
sim::Seconds residual_classical_block(ModeKind mode, sim::Seconds t_cpu, sim::Seconds t_async, bool after_shot);

}  // namespace qcs::workload
