#include "aqmsim/red.hpp"

#include <cmath>
#include <stdexcept>

#include "aqmsim/rng.hpp"

namespace aqmsim {

RedState::RedState(RedParams params) : params_(params) {
    if (!(params_.min_th_bytes < params_.max_th_bytes))
        throw std::invalid_argument("RedState: min_th must be below max_th");
    if (params_.w_q <= 0.0 || params_.w_q >= 1.0)
        throw std::invalid_argument("RedState: w_q must be in (0, 1)");
    if (params_.max_p <= 0.0 || params_.max_p > 1.0)
        throw std::invalid_argument("RedState: max_p must be in (0, 1]");
}

void RedState::update_avg(double q_bytes, SimTime now, bool idle) {
    if (q_bytes < 0.0)
        throw std::logic_error("RedState::update_avg: negative queue size");
    if (idle) {
        if (!q_time_)
            throw std::logic_error("RedState::update_avg: idle update without q_time");
        double m = (now - *q_time_).seconds() / params_.idle_slot_s;
        avg_ = std::pow(1.0 - params_.w_q, m) * avg_;
        // Still idle if this arrival ends up marked; decay resumes from now.
        q_time_ = now;
    } else {
        avg_ = (1.0 - params_.w_q) * avg_ + params_.w_q * q_bytes;
    }
}

RedDecision RedState::mark_decision(std::mt19937_64& rng) {
    if (avg_ < params_.min_th_bytes) {
        count_ = -1;
        return RedDecision::Pass;
    }
    if (avg_ >= params_.max_th_bytes) {
        count_ = 0;
        return RedDecision::ForceMark;
    }
    ++count_;
    double p_b = params_.max_p * (avg_ - params_.min_th_bytes) /
                 (params_.max_th_bytes - params_.min_th_bytes);
    double p_a;
    if (static_cast<double>(count_) * p_b >= 1.0)
        p_a = 1.0;
    else
        p_a = p_b / (1.0 - static_cast<double>(count_) * p_b);
    if (uniform01(rng) < p_a) {
        count_ = 0;
        return RedDecision::Mark;
    }
    return RedDecision::Pass;
}

QdiscVerdict RedQueue::enqueue(Packet pkt, SimTime now) {
    red_.update_avg(static_cast<double>(stats_.byte_length), now,
                    /*idle=*/fifo_.empty());
    if (red_.mark_decision(rng_) != RedDecision::Pass) {
        ++stats_.aqm_drops;
        return QdiscVerdict{VerdictKind::DroppedAqm, std::move(pkt), std::nullopt};
    }
    return DropTailQueue::enqueue(std::move(pkt), now);
}

std::optional<DequeueResult> RedQueue::dequeue(SimTime now) {
    auto result = DropTailQueue::dequeue(now);
    if (result && fifo_.empty()) red_.note_idle_start(now);
    return result;
}

}  // namespace aqmsim
