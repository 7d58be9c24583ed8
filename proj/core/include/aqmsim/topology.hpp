#ifndef AQMSIM_TOPOLOGY_HPP
#define AQMSIM_TOPOLOGY_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "aqmsim/codel.hpp"
#include "aqmsim/engine.hpp"
#include "aqmsim/qdisc.hpp"
#include "aqmsim/scenario.hpp"
#include "aqmsim/trace.hpp"
#include "aqmsim/traffic.hpp"

namespace aqmsim {

/// One-directional link: serialization at the line rate plus fixed
/// propagation delay. Back-to-back transmissions never overlap; a sender
/// outpacing the line rate queues on the link without bound.
class Link {
  public:
    Link(Engine& engine, LinkSettings settings);

    SimTime serialization_time(std::uint32_t size_bytes) const;

    /// Schedules delivery at max(now, busy_until) + serialization +
    /// propagation and advances busy_until by the serialization time.
    void transmit(Packet pkt, PacketSink deliver);

    SimTime busy_until() const { return busy_until_; }

  private:
    Engine& engine_;
    LinkSettings settings_;
    SimTime prop_delay_;
    SimTime busy_until_;
};

/// Factory for the discipline named by the scenario. The RED discipline
/// draws from its own PRNG stream of the run seed.
std::unique_ptr<Qdisc> make_qdisc(const Scenario& scenario, const Engine& engine);

struct SimulationOutputs {
    QdiscStats qdisc;
    std::vector<CodelDropRecord> drop_log;
    std::uint64_t packets_offered = 0;
    std::uint64_t packets_delivered = 0;
    std::uint64_t events_executed = 0;
};

/// Builds the two-client star scenario (FTP/TCP client, CBR/UDP client,
/// one router, one server with the studied discipline on the router's
/// server-facing egress) and runs it to completion, emitting trace rows
/// for every packet event at the studied queue plus server deliveries.
SimulationOutputs run_scenario(const Scenario& scenario, TraceWriter& trace);

}  // namespace aqmsim

#endif  // AQMSIM_TOPOLOGY_HPP
