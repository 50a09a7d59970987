#include "qcs/workload/session.hpp"

#include <algorithm>

namespace qcs::workload {

sim::Seconds residual_classical_block(ModeKind mode, sim::Seconds t_cpu, sim::Seconds t_async, bool after_shot) {
    if (mode == ModeKind::EFaaS && after_shot) return std::max(t_cpu - t_async, 0.0);
    return t_cpu;
}

}  // namespace qcs::workload
