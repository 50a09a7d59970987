#include "qcs/workload/future.hpp"

#include <algorithm>
#include <string>

namespace qcs::workload {

const char* to_string(FutureState state) {
    switch (state) {
        case FutureState::Pending: return "Pending";
        case FutureState::Resolved: return "Resolved";
        case FutureState::Committed: return "Committed";
        case FutureState::Aborted: return "Aborted";
    }
    return "?";
}

QuantumFuture::QuantumFuture(sim::Seconds submitted_at, sim::Seconds speculative_budget)
    : submitted_at_(submitted_at), speculative_budget_(std::max(0.0, speculative_budget)) {}

void QuantumFuture::resolve(sim::Seconds at, const quantum::EvalResult& plus, const quantum::EvalResult& minus) {
    if (state_ != FutureState::Pending)
        throw sim::SimulationError(std::string("future resolved from state ") + to_string(state_));
    if (at < submitted_at_) throw sim::SimulationError("future resolved before submission");
    resolved_at_ = at;
    plus_ = plus;
    minus_ = minus;
    state_ = FutureState::Resolved;
}

void QuantumFuture::commit() {
    if (state_ != FutureState::Resolved)
        throw sim::SimulationError(std::string("future committed from state ") + to_string(state_));
    state_ = FutureState::Committed;
}

void QuantumFuture::abort() {
    if (state_ != FutureState::Resolved)
        throw sim::SimulationError(std::string("future aborted from state ") + to_string(state_));
    state_ = FutureState::Aborted;
}

sim::Seconds QuantumFuture::speculate(sim::Seconds requested) {
    if (state_ != FutureState::Pending)
        throw sim::SimulationError("speculative work charged to a non-pending future");
    const sim::Seconds granted = std::clamp(requested, 0.0, speculative_budget_ - speculative_used_);
    speculative_used_ += granted;
    return granted;
}

const quantum::EvalResult& QuantumFuture::plus() const {
    if (!plus_) throw sim::SimulationError("future result read before resolution");
    return *plus_;
}

const quantum::EvalResult& QuantumFuture::minus() const {
    if (!minus_) throw sim::SimulationError("future result read before resolution");
    return *minus_;
}

}  // namespace qcs::workload
