#include "aqmsim/topology.hpp"

#include <cmath>
#include <utility>

#include "aqmsim/lstfcodel.hpp"
#include "aqmsim/red.hpp"

namespace aqmsim {
namespace {

// PRNG stream ids; one per randomness consumer.
constexpr std::uint64_t kRedStream = 2;

// Drain window after the sources stop, long enough to empty the studied
// queue and land in-flight packets.
constexpr double kDrainSeconds = 2.0;

}  // namespace

Link::Link(Engine& engine, LinkSettings settings)
    : engine_(engine), settings_(settings),
      prop_delay_(SimTime::from_seconds(settings.prop_delay_s)) {}

SimTime Link::serialization_time(std::uint32_t size_bytes) const {
    return SimTime::from_ns(static_cast<std::int64_t>(
        std::llround(size_bytes * 8.0 * 1e9 / settings_.rate_bps)));
}

void Link::transmit(Packet pkt, PacketSink deliver) {
    SimTime start = std::max(engine_.now(), busy_until_);
    SimTime done = start + serialization_time(pkt.size_bytes);
    busy_until_ = done;
    engine_.schedule(done + prop_delay_,
                     [pkt = std::move(pkt), deliver = std::move(deliver)]() mutable {
                         deliver(std::move(pkt));
                     });
}

std::unique_ptr<Qdisc> make_qdisc(const Scenario& scenario, const Engine& engine) {
    switch (scenario.qdisc) {
        case QdiscKind::DropTail:
            return std::make_unique<DropTailQueue>(scenario.capacity_bytes);
        case QdiscKind::Red:
            return std::make_unique<RedQueue>(scenario.red, engine.stream(kRedStream),
                                              scenario.capacity_bytes);
        case QdiscKind::Codel:
            return std::make_unique<CoDelQueue>(scenario.codel, scenario.capacity_bytes);
        case QdiscKind::LstfCodel:
            return std::make_unique<LstfCodelQueue>(scenario.lstfcodel, scenario.codel,
                                                    scenario.capacity_bytes);
    }
    throw std::logic_error("make_qdisc: unknown qdisc kind");
}

namespace {

/// The router's server-facing egress: the studied queue feeding the
/// egress link. Every packet event here lands in the trace.
class RouterEgress {
  public:
    RouterEgress(Engine& engine, Qdisc& qdisc, Link& link, TraceWriter& trace,
                 PacketSink deliver)
        : engine_(engine), qdisc_(qdisc), link_(link), trace_(trace),
          deliver_(std::move(deliver)) {}

    void on_arrival(Packet pkt) {
        SimTime now = engine_.now();
        std::uint64_t id = pkt.id;
        std::string flow = pkt.flow;
        std::uint32_t size = pkt.size_bytes;
        auto verdict = qdisc_.enqueue(std::move(pkt), now);
        switch (verdict.outcome) {
            case VerdictKind::Enqueued:
                record(now, TraceEvent::Enqueue, id, flow, size, std::nullopt,
                       verdict.assigned_priority);
                maybe_transmit();
                break;
            case VerdictKind::DroppedTail:
                record(now, TraceEvent::TailDrop, id, flow, size, std::nullopt,
                       std::nullopt);
                break;
            case VerdictKind::DroppedAqm:
                record(now, TraceEvent::AqmDrop, id, flow, size, std::nullopt,
                       verdict.dropped->priority);
                break;
        }
    }

    void maybe_transmit() {
        if (busy_) return;
        SimTime now = engine_.now();
        auto result = qdisc_.dequeue(now);
        if (!result) return;
        for (const Packet& victim : result->aqm_drops) {
            record(now, TraceEvent::AqmDrop, victim.id, victim.flow,
                   victim.size_bytes, (now - victim.enqueued_at).seconds(),
                   victim.priority);
        }
        record(now, TraceEvent::Dequeue, result->pkt.id, result->pkt.flow,
               result->pkt.size_bytes, result->sojourn_s, result->pkt.priority);
        busy_ = true;
        SimTime tx_done = now + link_.serialization_time(result->pkt.size_bytes);
        link_.transmit(std::move(result->pkt), deliver_);
        engine_.schedule(tx_done, [this] {
            busy_ = false;
            maybe_transmit();
        });
    }

    void record_delivery(const Packet& pkt) {
        record(engine_.now(), TraceEvent::Deliver, pkt.id, pkt.flow,
               pkt.size_bytes, std::nullopt, pkt.priority);
    }

  private:
    void record(SimTime now, TraceEvent ev, std::uint64_t pkt_id,
                const std::string& flow, std::uint32_t size_bytes,
                std::optional<double> sojourn, std::optional<double> epsilon) {
        const auto& stats = qdisc_.occupancy();
        TraceRow row;
        row.time = now;
        row.event = ev;
        row.pkt_id = pkt_id;
        row.flow = flow;
        row.size_bytes = size_bytes;
        row.sojourn_s = sojourn;
        row.qlen_bytes = stats.byte_length;
        row.qlen_pkts = stats.packet_length;
        row.gamma_s = qdisc_.slack_estimate();
        row.epsilon = epsilon;
        trace_.write(row);
    }

    Engine& engine_;
    Qdisc& qdisc_;
    Link& link_;
    TraceWriter& trace_;
    PacketSink deliver_;
    bool busy_ = false;
};

}  // namespace

SimulationOutputs run_scenario(const Scenario& scenario, TraceWriter& trace) {
    scenario.validate();

    Engine engine(scenario.seed);
    auto qdisc = make_qdisc(scenario, engine);

    Link client_a_up(engine, scenario.client_a_link);
    Link client_b_up(engine, scenario.client_b_link);
    Link egress(engine, scenario.egress_link);
    // Reverse path for ACKs: symmetric rates, no studied queue.
    Link egress_rev(engine, scenario.egress_link);
    Link client_a_down(engine, scenario.client_a_link);

    SimulationOutputs out;
    bool stopped = false;
    TcpSender* sender_ptr = nullptr;
    RouterEgress* router_ptr = nullptr;
    TcpReceiver* receiver_ptr = nullptr;

    PacketSink server_sink = [&](Packet pkt) {
        ++out.packets_delivered;
        router_ptr->record_delivery(pkt);
        if (pkt.protocol == Protocol::TcpData)
            receiver_ptr->on_data(pkt, engine.now());
    };

    RouterEgress router(engine, *qdisc, egress, trace, server_sink);
    router_ptr = &router;

    TcpReceiver receiver("ack", [&](Packet ack) {
        egress_rev.transmit(std::move(ack), [&](Packet at_router) {
            client_a_down.transmit(std::move(at_router), [&](Packet at_client) {
                sender_ptr->on_ack(at_client.seq);
            });
        });
    });
    receiver_ptr = &receiver;

    auto offer = [&](Link& access_link, Packet pkt) {
        if (stopped) return;
        ++out.packets_offered;
        access_link.transmit(std::move(pkt), [&](Packet at_router) {
            router.on_arrival(std::move(at_router));
        });
    };

    TcpSender sender(engine, scenario.tcp, "ftp",
                     [&](Packet pkt) { offer(client_a_up, std::move(pkt)); });
    sender_ptr = &sender;

    CbrSource cbr(engine, scenario.cbr, "cbr",
                  [&](Packet pkt) { offer(client_b_up, std::move(pkt)); });

    if (scenario.ftp_enabled)
        engine.schedule(SimTime(), [&] { sender.start(); });
    if (scenario.cbr_enabled) cbr.start();

    engine.run_until(SimTime::from_seconds(scenario.duration_s));
    stopped = true;
    engine.run_until(SimTime::from_seconds(scenario.duration_s + kDrainSeconds));

    out.qdisc = qdisc->occupancy();
    if (auto* cq = dynamic_cast<CoDelQueue*>(qdisc.get()))
        out.drop_log = cq->control().drop_log();
    else if (auto* lq = dynamic_cast<LstfCodelQueue*>(qdisc.get()))
        out.drop_log = lq->control().drop_log();
    out.events_executed = engine.events_executed();
    return out;
}

}  // namespace aqmsim
