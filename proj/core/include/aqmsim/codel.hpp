#ifndef AQMSIM_CODEL_HPP
#define AQMSIM_CODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "aqmsim/qdisc.hpp"
#include "aqmsim/time.hpp"

namespace aqmsim {

struct CodelParams {
    double target_s = 0.005;
    double interval_s = 0.100;
    std::uint32_t mtu_bytes = kMtuBytes;
};

/// One AQM drop as seen by the control loop, for post-run analysis of the
/// drop spacing.
struct CodelDropRecord {
    SimTime at;
    std::uint32_t count = 0;
    /// drop_next after rescheduling for this drop.
    SimTime drop_next;
    /// True when this drop opened a new dropping episode.
    bool entered = false;
};

/// Sojourn-driven control loop state: setpoint detection via
/// first_above_time, drop scheduling via the inverse-square-root law.
class CodelControl {
  public:
    explicit CodelControl(CodelParams params = {}) : params_(params) {}

    /// Next drop time: t + interval / sqrt(count). count must be >= 1.
    static SimTime control_law(SimTime t, std::uint32_t count, double interval_s);

    /// Estimator step run on every dequeue candidate. Returns ok_to_drop:
    /// true only once the sojourn has stayed above target for a full
    /// interval. A sojourn below target, or a standing queue of at most one
    /// MTU, clears the timer.
    bool should_drop(double sojourn_s, SimTime now, std::uint64_t byte_length);

    /// Clears the above-target timer (queue went empty).
    void clear_first_above() { first_above_time_.reset(); }

    bool dropping() const { return dropping_; }
    std::uint32_t count() const { return count_; }
    std::optional<SimTime> drop_next() const { return drop_next_; }
    std::optional<SimTime> first_above_time() const { return first_above_time_; }
    const CodelParams& params() const { return params_; }
    const std::vector<CodelDropRecord>& drop_log() const { return drop_log_; }

    void leave_dropping() {
        if (!dropping_) return;
        dropping_ = false;
        last_count_ = count_;
        count_ = 0;
        last_drop_next_ = drop_next_;
        drop_next_.reset();
    }

    /// Enters dropping state at `now`, resuming the drop rate from the
    /// previous episode when it ended recently (count backs off by 2 when
    /// re-entering within 16 intervals, floor 1).
    void enter_dropping(SimTime now);

    /// Registers one more drop inside the current episode and reschedules
    /// drop_next from its previous value.
    void continue_dropping(SimTime now);

  private:
    void record(SimTime now, bool entered) {
        drop_log_.push_back(CodelDropRecord{now, count_, *drop_next_, entered});
    }

    CodelParams params_;
    std::optional<SimTime> first_above_time_;
    std::optional<SimTime> drop_next_;
    std::optional<SimTime> last_drop_next_;
    std::uint32_t count_ = 0;
    std::uint32_t last_count_ = 0;
    bool dropping_ = false;
    std::vector<CodelDropRecord> drop_log_;
};

/// CoDel: the control loop layered on the plain FIFO.
class CoDelQueue : public DropTailQueue {
  public:
    explicit CoDelQueue(CodelParams params = {}, std::uint64_t capacity_bytes = 15000)
        : DropTailQueue(capacity_bytes), control_(params) {}

    std::optional<DequeueResult> dequeue(SimTime now) override;

    std::string_view name() const override { return "codel"; }
    const CodelControl& control() const { return control_; }

  private:
    struct Candidate {
        std::optional<Packet> pkt;
        double sojourn_s = 0.0;
        bool ok_to_drop = false;
    };

    /// Pops the FIFO head and runs the estimator on its sojourn.
    Candidate next_candidate(SimTime now);

    CodelControl control_;
};

}  // namespace aqmsim

#endif  // AQMSIM_CODEL_HPP
