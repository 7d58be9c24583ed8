#ifndef AQMSIM_RED_HPP
#define AQMSIM_RED_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "aqmsim/qdisc.hpp"
#include "aqmsim/time.hpp"

namespace aqmsim {

struct RedParams {
    double w_q = 0.002;
    double min_th_bytes = 5.0 * kMtuBytes;
    double max_th_bytes = 15.0 * kMtuBytes;
    double max_p = 0.1;
    /// Transmission time of a typical (MTU-sized) packet at line rate;
    /// one idle "slot" for the idle-decay exponent.
    double idle_slot_s = kMtuBytes * 8.0 / 1.7e6;
};

enum class RedDecision { Pass, Mark, ForceMark };

/// Average-queue-length state for the RED gateway: EWMA over arrivals with
/// exponential decay across idle periods, and the three-stage marking
/// window between min_th and max_th.
class RedState {
  public:
    explicit RedState(RedParams params = {});

    /// EWMA step on packet arrival. Nonempty queue:
    /// avg' = (1 - w_q) * avg + w_q * q. Idle queue: avg decays by
    /// (1 - w_q)^m with m idle slots since q_time.
    void update_avg(double q_bytes, SimTime now, bool idle);

    /// Three-stage marking: below min_th pass; inside the window mark with
    /// the geometrically spread probability p_a = p_b / (1 - count * p_b);
    /// at or above max_th always mark.
    RedDecision mark_decision(std::mt19937_64& rng);

    void note_idle_start(SimTime at) { q_time_ = at; }

    double avg() const { return avg_; }
    const RedParams& params() const { return params_; }

  private:
    RedParams params_;
    double avg_ = 0.0;
    std::optional<SimTime> q_time_;
    /// Packets since the last mark inside the window; -1 outside it.
    std::int64_t count_ = -1;
};

/// FIFO with RED admission; a "mark" is realized as a drop.
class RedQueue : public DropTailQueue {
  public:
    RedQueue(RedParams params, std::mt19937_64 rng,
             std::uint64_t capacity_bytes = 15000)
        : DropTailQueue(capacity_bytes), red_(params), rng_(std::move(rng)) {
        red_.note_idle_start(SimTime());
    }

    QdiscVerdict enqueue(Packet pkt, SimTime now) override;
    std::optional<DequeueResult> dequeue(SimTime now) override;

    std::string_view name() const override { return "red"; }
    const RedState& state() const { return red_; }

  private:
    RedState red_;
    std::mt19937_64 rng_;
};

}  // namespace aqmsim

#endif  // AQMSIM_RED_HPP
