#pragma once

#include <optional>

#include "qcs/quantum/evaluator.hpp"
#include "qcs/sim/engine.hpp"

namespace qcs::workload {

enum class FutureState { Pending, Resolved, Committed, Aborted };

const char* to_string(FutureState state);

// Promise for one shot batch. Classical speculation may run against it while it is
// pending; the optimizer commits or discards it once the result is in.
class QuantumFuture {
public:
    QuantumFuture(sim::Seconds submitted_at, sim::Seconds speculative_budget);

    void resolve(sim::Seconds at, const quantum::EvalResult& plus, const quantum::EvalResult& minus);
    void commit();
    void abort();

    // Charges speculative work; returns the part that fits the remaining budget.
    sim::Seconds speculate(sim::Seconds requested);

    [[nodiscard]] FutureState state() const { return state_; }
    [[nodiscard]] sim::Seconds submitted_at() const { return submitted_at_; }
    [[nodiscard]] std::optional<sim::Seconds> resolved_at() const { return resolved_at_; }
    [[nodiscard]] const quantum::EvalResult& plus() const;
    [[nodiscard]] const quantum::EvalResult& minus() const;
    [[nodiscard]] sim::Seconds speculative_used() const { return speculative_used_; }

private:
    sim::Seconds submitted_at_;
    sim::Seconds speculative_budget_;
    sim::Seconds speculative_used_ = 0.0;
    std::optional<sim::Seconds> resolved_at_;
    std::optional<quantum::EvalResult> plus_, minus_;
    FutureState state_ = FutureState::Pending;
};

}  // namespace qcs::workload
