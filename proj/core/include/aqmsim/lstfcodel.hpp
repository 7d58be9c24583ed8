#ifndef AQMSIM_LSTFCODEL_HPP
#define AQMSIM_LSTFCODEL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aqmsim/codel.hpp"
#include "aqmsim/qdisc.hpp"

namespace aqmsim {

/// EWMA queuing-delay (slack) estimator. gamma tracks the average slack;
/// each observed delay beta folds in as
///   gamma' = (1 - alpha) * gamma + alpha * (beta + pending)
/// where pending is a one-shot contribution from the AQM's next-drop
/// schedule, zeroed after use.
class SlackEstimator {
  public:
    explicit SlackEstimator(double alpha = 0.5);

    void update(double beta_s);

    /// Packet priority from average slack: 0 when gamma is 0, else
    /// 1 / (1 + gamma). Smaller values are more urgent.
    static double classify(double gamma_s);

    /// Stages the next-drop contribution (clamped at 0) for the next
    /// update, replacing any staged value.
    void stage_drop_next_influence(double s) { pending_ = s > 0.0 ? s : 0.0; }

    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }
    double beta_last() const { return beta_last_; }
    double pending_influence() const { return pending_; }

  private:
    double alpha_;
    double gamma_ = 0.0;
    double beta_last_ = 0.0;
    double pending_ = 0.0;
};

/// Queue position: ascending priority value, FIFO among equals.
struct PriorityKey {
    double epsilon = 0.0;
    std::uint64_t arrival_seq = 0;

    auto operator<=>(const PriorityKey&) const = default;
};

struct LstfParams {
    double alpha = 0.5;
    bool drop_next_influence = true;
};

/// CoDel's control loop over a slack-derived priority queue: packets are
/// classified at ingress, service goes to the least-slack (minimum key)
/// packet, and AQM drops claim the highest-slack (maximum key) packet.
class LstfCodelQueue : public Qdisc {
  public:
    explicit LstfCodelQueue(LstfParams lstf = {}, CodelParams codel = {},
                            std::uint64_t capacity_bytes = 15000)
        : capacity_bytes_(capacity_bytes), estimator_(lstf.alpha),
          drop_next_influence_(lstf.drop_next_influence), control_(codel) {}

    QdiscVerdict enqueue(Packet pkt, SimTime now) override;
    std::optional<DequeueResult> dequeue(SimTime now) override;

    std::string_view name() const override { return "lstfcodel"; }
    std::optional<double> slack_estimate() const override {
        return estimator_.gamma();
    }

    const SlackEstimator& estimator() const { return estimator_; }
    const CodelControl& control() const { return control_; }

    /// Resident keys in service order; for diagnostics and model tests.
    std::vector<PriorityKey> resident_keys() const;

  private:
    struct Candidate {
        std::optional<Packet> pkt;
        double sojourn_s = 0.0;
        bool ok_to_drop = false;
    };

    /// Extracts the minimum-key packet and runs the control-loop estimator
    /// on its sojourn.
    Candidate next_candidate(SimTime now);

    /// Removes the maximum-key resident, if any.
    std::optional<Packet> pop_drop_victim();

    void stage_influence(SimTime now);

    std::uint64_t capacity_bytes_;
    SlackEstimator estimator_;
    bool drop_next_influence_;
    CodelControl control_;
    std::uint64_t next_arrival_seq_ = 0;
    std::map<PriorityKey, Packet> queue_;
};

}  // namespace aqmsim

#endif  // AQMSIM_LSTFCODEL_HPP
