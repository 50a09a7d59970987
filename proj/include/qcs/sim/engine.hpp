#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcs::sim {

using Seconds = double;

enum class EventKind {
    JobArrival,
    ShotComplete,
    CpuStepComplete,
    CalibrationComplete,
    BackgroundArrival,
    FutureResolved,
    CacheExpiry,
    HorizonEnd,
};

const char* to_string(EventKind kind);

struct Event {
    Seconds fire_at = 0.0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::HorizonEnd;
    std::uint64_t payload = 0;
    std::uint64_t token = 0;  // staleness guard for timers that may be superseded
};

// Thrown for broken engine contracts (scheduling in the past, illegal state edges).
class SimulationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class EventQueue {
public:
    // Assigns the sequence number; returns it.
    std::uint64_t push(Event event);
    Event pop();
    [[nodiscard]] const Event& top() const;
    [[nodiscard]] bool empty() const { return heap_.empty(); }
    [[nodiscard]] std::size_t size() const { return heap_.size(); }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.sequence > b.sequence;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_sequence_ = 0;
};

class Engine {
public:
    using Handler = std::function<void(const Event&)>;

    [[nodiscard]] Seconds now() const { return clock_; }

    void schedule(EventKind kind, Seconds fire_at, std::uint64_t payload = 0, std::uint64_t token = 0);

    // Processes every event with fire_at <= horizon. A HorizonEnd event at the horizon
    // is added automatically. Returns the number of events handled.
    std::size_t run_until(Seconds horizon, const Handler& handler);

    void stop() { stopped_ = true; }

private:
    EventQueue queue_;
    Seconds clock_ = 0.0;
    bool stopped_ = false;
};

}  // namespace qcs::sim
