#ifndef AQMSIM_ENGINE_HPP
#define AQMSIM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>
#include <utility>

#include "aqmsim/rng.hpp"
#include "aqmsim/time.hpp"

namespace aqmsim {

using EventHandle = std::uint64_t;

struct RunSummary {
    std::uint64_t events_executed = 0;
    SimTime final_time;
};

/// Single-threaded discrete-event engine. Events with equal fire time
/// execute in scheduling (insertion) order.
class Engine {
  public:
    explicit Engine(std::uint64_t seed = 0) : seed_(seed) {}

    /// Schedules an action at virtual time `at`. Scheduling in the past is a
    /// programming error and throws.
    EventHandle schedule(SimTime at, std::function<void()> action);

    /// Cancels a pending event; cancelling an already-fired or unknown
    /// handle is a no-op.
    void cancel(EventHandle h);

    /// Executes every pending event with fire time <= t_end and advances
    /// now() to t_end. Resumable: later calls continue from where the
    /// previous one stopped.
    RunSummary run_until(SimTime t_end);

    SimTime now() const { return now_; }

    std::uint64_t seed() const { return seed_; }

    /// Independent PRNG stream for one randomness consumer.
    std::mt19937_64 stream(std::uint64_t stream_id) const {
        return make_stream(seed_, stream_id);
    }

    std::uint64_t events_scheduled() const { return scheduled_; }
    std::uint64_t events_cancelled() const { return cancelled_; }
    std::uint64_t events_executed() const { return executed_; }
    std::uint64_t events_pending() const { return calendar_.size(); }

  private:
    using Key = std::pair<SimTime, std::uint64_t>;

    SimTime now_;
    std::uint64_t seed_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t scheduled_ = 0;
    std::uint64_t cancelled_ = 0;
    std::uint64_t executed_ = 0;
    std::map<Key, std::function<void()>> calendar_;
    std::unordered_map<EventHandle, SimTime> pending_;
};

}  // namespace aqmsim

#endif  // AQMSIM_ENGINE_HPP
