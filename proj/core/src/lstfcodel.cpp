#include "aqmsim/lstfcodel.hpp"

#include <stdexcept>
#include <utility>

namespace aqmsim {

SlackEstimator::SlackEstimator(double alpha) : alpha_(alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("SlackEstimator: alpha must be in [0, 1]");
}

void SlackEstimator::update(double beta_s) {
    if (beta_s < 0.0)
        throw std::logic_error("SlackEstimator::update: beta must be nonnegative");
    beta_last_ = beta_s;
    gamma_ = (1.0 - alpha_) * gamma_ + alpha_ * (beta_s + pending_);
    pending_ = 0.0;
}

double SlackEstimator::classify(double gamma_s) {
    if (gamma_s < 0.0)
        throw std::logic_error("SlackEstimator::classify: gamma must be nonnegative");
    if (gamma_s == 0.0) return 0.0;
    return 1.0 / (1.0 + gamma_s);
}

QdiscVerdict LstfCodelQueue::enqueue(Packet pkt, SimTime now) {
    if (stats_.byte_length + pkt.size_bytes > capacity_bytes_)
        return tail_drop(std::move(pkt));
    // Priority is fixed at ingress and never recomputed while queued.
    pkt.priority = SlackEstimator::classify(estimator_.gamma());
    PriorityKey key{*pkt.priority, next_arrival_seq_++};
    auto verdict = accept(pkt, now);
    queue_.emplace(key, std::move(pkt));
    return verdict;
}

LstfCodelQueue::Candidate LstfCodelQueue::next_candidate(SimTime now) {
    Candidate c;
    if (queue_.empty()) {
        control_.clear_first_above();
        return c;
    }
    auto it = queue_.begin();
    Packet pkt = std::move(it->second);
    queue_.erase(it);
    c.sojourn_s = (now - pkt.enqueued_at).seconds();
    c.ok_to_drop =
        control_.should_drop(c.sojourn_s, now, stats_.byte_length - pkt.size_bytes);
    c.pkt = std::move(pkt);
    return c;
}

std::optional<Packet> LstfCodelQueue::pop_drop_victim() {
    if (queue_.empty()) return std::nullopt;
    auto it = std::prev(queue_.end());
    Packet pkt = std::move(it->second);
    queue_.erase(it);
    return pkt;
}

void LstfCodelQueue::stage_influence(SimTime now) {
    if (!drop_next_influence_) return;
    estimator_.stage_drop_next_influence((*control_.drop_next() - now).seconds());
}

std::optional<DequeueResult> LstfCodelQueue::dequeue(SimTime now) {
    std::vector<Packet> aqm_drops;
    Candidate c = next_candidate(now);

    if (control_.dropping()) {
        if (!c.ok_to_drop) {
            control_.leave_dropping();
        } else {
            while (c.pkt && control_.dropping() && now >= *control_.drop_next()) {
                // The drop claims the highest-slack resident, not the
                // service candidate.
                auto victim = pop_drop_victim();
                if (!victim) break;
                note_removed(*victim, /*aqm=*/true);
                aqm_drops.push_back(std::move(*victim));
                // Re-run the estimator for the unchanged candidate against
                // the shrunken queue.
                c.ok_to_drop = control_.should_drop(
                    c.sojourn_s, now, stats_.byte_length - c.pkt->size_bytes);
                if (!c.ok_to_drop) {
                    control_.leave_dropping();
                } else {
                    control_.continue_dropping(now);
                    stage_influence(now);
                }
            }
        }
    } else if (c.ok_to_drop) {
        auto victim = pop_drop_victim();
        if (victim) {
            note_removed(*victim, /*aqm=*/true);
            aqm_drops.push_back(std::move(*victim));
            c.ok_to_drop = control_.should_drop(
                c.sojourn_s, now, stats_.byte_length - c.pkt->size_bytes);
            control_.enter_dropping(now);
            stage_influence(now);
        }
    }

    if (!c.pkt) {
        if (!aqm_drops.empty())
            throw std::logic_error("LstfCodelQueue::dequeue: lost the service candidate");
        return std::nullopt;
    }
    note_removed(*c.pkt, /*aqm=*/false);
    estimator_.update(c.sojourn_s);
    return DequeueResult{std::move(*c.pkt), c.sojourn_s, std::move(aqm_drops)};
}

std::vector<PriorityKey> LstfCodelQueue::resident_keys() const {
    std::vector<PriorityKey> keys;
    keys.reserve(queue_.size());
    for (const auto& [key, pkt] : queue_) keys.push_back(key);
    return keys;
}

}  // namespace aqmsim
