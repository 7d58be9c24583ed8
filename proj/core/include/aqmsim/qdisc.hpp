#ifndef AQMSIM_QDISC_HPP
#define AQMSIM_QDISC_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "aqmsim/packet.hpp"
#include "aqmsim/time.hpp"

namespace aqmsim {

enum class VerdictKind { Enqueued, DroppedTail, DroppedAqm };

struct QdiscVerdict {
    VerdictKind outcome = VerdictKind::Enqueued;
    /// Present iff the outcome is a drop.
    std::optional<Packet> dropped;
    /// Priority assigned at ingress, when the discipline assigns one.
    std::optional<double> assigned_priority;
};

struct QdiscStats {
    std::uint64_t enqueues = 0;
    std::uint64_t dequeues = 0;
    std::uint64_t tail_drops = 0;
    std::uint64_t aqm_drops = 0;
    std::uint64_t byte_length = 0;
    std::uint64_t packet_length = 0;
};

struct DequeueResult {
    Packet pkt;
    double sojourn_s = 0.0;
    /// Packets consumed by the AQM during this dequeue, in drop order.
    std::vector<Packet> aqm_drops;
};

/// Queue-discipline interface shared by every discipline in the library.
/// A full buffer is a verdict, not an error; AQM drops are surfaced in the
/// dequeue result so the trace can attribute every packet's fate.
class Qdisc {
  public:
    virtual ~Qdisc() = default;

    virtual QdiscVerdict enqueue(Packet pkt, SimTime now) = 0;
    virtual std::optional<DequeueResult> dequeue(SimTime now) = 0;

    const QdiscStats& occupancy() const { return stats_; }
    virtual std::string_view name() const = 0;

    /// Current slack estimate (gamma), when the discipline maintains one.
    virtual std::optional<double> slack_estimate() const { return std::nullopt; }

  protected:
    QdiscStats stats_;

    QdiscVerdict accept(Packet& pkt, SimTime now) {
        pkt.enqueued_at = now;
        ++stats_.enqueues;
        stats_.byte_length += pkt.size_bytes;
        ++stats_.packet_length;
        return QdiscVerdict{VerdictKind::Enqueued, std::nullopt, pkt.priority};
    }

    QdiscVerdict tail_drop(Packet pkt) {
        ++stats_.tail_drops;
        return QdiscVerdict{VerdictKind::DroppedTail, std::move(pkt), std::nullopt};
    }

    void note_removed(const Packet& pkt, bool aqm) {
        stats_.byte_length -= pkt.size_bytes;
        --stats_.packet_length;
        if (aqm)
            ++stats_.aqm_drops;
        else
            ++stats_.dequeues;
    }
};

/// Plain FIFO with byte-based tail drop; the non-AQM baseline.
class DropTailQueue : public Qdisc {
  public:
    explicit DropTailQueue(std::uint64_t capacity_bytes = 15000)
        : capacity_bytes_(capacity_bytes) {}

    QdiscVerdict enqueue(Packet pkt, SimTime now) override {
        if (stats_.byte_length + pkt.size_bytes > capacity_bytes_)
            return tail_drop(std::move(pkt));
        auto verdict = accept(pkt, now);
        fifo_.push_back(std::move(pkt));
        return verdict;
    }

    std::optional<DequeueResult> dequeue(SimTime now) override {
        if (fifo_.empty()) return std::nullopt;
        Packet pkt = std::move(fifo_.front());
        fifo_.pop_front();
        note_removed(pkt, /*aqm=*/false);
        double sojourn = (now - pkt.enqueued_at).seconds();
        return DequeueResult{std::move(pkt), sojourn, {}};
    }

    std::string_view name() const override { return "droptail"; }

  protected:
    std::uint64_t capacity_bytes_;
    std::deque<Packet> fifo_;
};

}  // namespace aqmsim

#endif  // AQMSIM_QDISC_HPP
