#include "qcs/sim/engine.hpp"

#include <algorithm>

namespace qcs::sim {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::JobArrival: return "JobArrival";
        case EventKind::ShotComplete: return "ShotComplete";
        case EventKind::CpuStepComplete: return "CpuStepComplete";
        case EventKind::CalibrationComplete: return "CalibrationComplete";
        case EventKind::BackgroundArrival: return "BackgroundArrival";
        case EventKind::FutureResolved: return "FutureResolved";
        case EventKind::CacheExpiry: return "CacheExpiry";
        case EventKind::HorizonEnd: return "HorizonEnd";
    }
    return "?";
}

std::uint64_t EventQueue::push(Event event) {
    event.sequence = next_sequence_++;
    heap_.push(event);
    return event.sequence;
}

Event EventQueue::pop() {
    if (heap_.empty()) throw SimulationError("pop from empty event queue");
    Event e = heap_.top();
    heap_.pop();
    return e;
}

const Event& EventQueue::top() const {
    if (heap_.empty()) throw SimulationError("top of empty event queue");
    return heap_.top();
}

void Engine::schedule(EventKind kind, Seconds fire_at, std::uint64_t payload, std::uint64_t token) {
    if (!(fire_at >= clock_)) {
        throw SimulationError("event in past: " + std::string(to_string(kind)) + " at " +
                              std::to_string(fire_at) + " < clock " + std::to_string(clock_));
    }
    queue_.push(Event{fire_at, 0, kind, payload, token});
}

std::size_t Engine::run_until(Seconds horizon, const Handler& handler) {
    schedule(EventKind::HorizonEnd, std::max(horizon, clock_));
    std::size_t handled = 0;
    stopped_ = false;
    while (!queue_.empty() && !stopped_) {
        if (queue_.top().fire_at > horizon) break;
        Event e = queue_.pop();
        clock_ = e.fire_at;
        if (e.kind == EventKind::HorizonEnd) continue;
        handler(e);
        ++handled;
    }
    return handled;
}

}  // namespace qcs::sim
