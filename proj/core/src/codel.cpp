#include "aqmsim/codel.hpp"

#include <cmath>
#include <stdexcept>

namespace aqmsim {

SimTime CodelControl::control_law(SimTime t, std::uint32_t count, double interval_s) {
    if (count == 0)
        throw std::logic_error("CodelControl::control_law: count must be >= 1");
    return t + SimTime::from_seconds(interval_s / std::sqrt(static_cast<double>(count)));
}

bool CodelControl::should_drop(double sojourn_s, SimTime now, std::uint64_t byte_length) {
    if (sojourn_s < params_.target_s || byte_length <= params_.mtu_bytes) {
        // Went below target (or only a standing MTU remains): stay below
        // for at least one interval before dropping again.
        first_above_time_.reset();
        return false;
    }
    if (!first_above_time_) {
        first_above_time_ = now + SimTime::from_seconds(params_.interval_s);
        return false;
    }
    return now >= *first_above_time_;
}

void CodelControl::enter_dropping(SimTime now) {
    dropping_ = true;
    bool recent = last_drop_next_ &&
                  (now - *last_drop_next_) <
                      SimTime::from_seconds(16.0 * params_.interval_s);
    if (recent && last_count_ > 2)
        count_ = last_count_ - 2;
    else
        count_ = 1;
    drop_next_ = control_law(now, count_, params_.interval_s);
    record(now, /*entered=*/true);
}

void CodelControl::continue_dropping(SimTime now) {
    ++count_;
    drop_next_ = control_law(*drop_next_, count_, params_.interval_s);
    record(now, /*entered=*/false);
}

CoDelQueue::Candidate CoDelQueue::next_candidate(SimTime now) {
    Candidate c;
    if (fifo_.empty()) {
        control_.clear_first_above();
        return c;
    }
    Packet pkt = std::move(fifo_.front());
    fifo_.pop_front();
    c.sojourn_s = (now - pkt.enqueued_at).seconds();
    // Estimator sees the queue length remaining after the head leaves.
    c.ok_to_drop =
        control_.should_drop(c.sojourn_s, now, stats_.byte_length - pkt.size_bytes);
    c.pkt = std::move(pkt);
    return c;
}

std::optional<DequeueResult> CoDelQueue::dequeue(SimTime now) {
    std::vector<Packet> aqm_drops;
    Candidate c = next_candidate(now);

    if (control_.dropping()) {
        if (!c.ok_to_drop) {
            control_.leave_dropping();
        } else {
            // A large backlog can demand several drops per dequeue, hence
            // the loop.
            while (c.pkt && control_.dropping() && now >= *control_.drop_next()) {
                note_removed(*c.pkt, /*aqm=*/true);
                aqm_drops.push_back(std::move(*c.pkt));
                c = next_candidate(now);
                if (!c.ok_to_drop)
                    control_.leave_dropping();
                else
                    control_.continue_dropping(now);
            }
        }
    } else if (c.ok_to_drop) {
        // Sojourn has been above target for a full interval: enter
        // dropping state with an initial drop.
        note_removed(*c.pkt, /*aqm=*/true);
        aqm_drops.push_back(std::move(*c.pkt));
        c = next_candidate(now);
        control_.enter_dropping(now);
    }

    if (!c.pkt) {
        // ok_to_drop is false once at most one MTU remains, so the AQM can
        // never consume the whole queue.
        if (!aqm_drops.empty())
            throw std::logic_error("CoDelQueue::dequeue: AQM consumed the entire queue");
        return std::nullopt;
    }
    note_removed(*c.pkt, /*aqm=*/false);
    return DequeueResult{std::move(*c.pkt), c.sojourn_s, std::move(aqm_drops)};
}

}  // namespace aqmsim
