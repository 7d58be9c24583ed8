#ifndef AQMSIM_PACKET_HPP
#define AQMSIM_PACKET_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "aqmsim/time.hpp"

namespace aqmsim {

inline constexpr std::uint32_t kMtuBytes = 1500;

enum class Protocol { TcpData, TcpAck, Udp };

struct Packet {
    std::uint64_t id = 0;
    std::string flow;
    std::uint32_t size_bytes = 0;
    Protocol protocol = Protocol::Udp;
    SimTime created_at;
    SimTime enqueued_at;
    /// Priority value assigned at ingress; only populated under the
    /// slack-priority discipline.
    std::optional<double> priority;

    // Transport bookkeeping (TCP only).
    std::uint64_t seq = 0;
    bool retransmit = false;
};

}  // namespace aqmsim

#endif  // AQMSIM_PACKET_HPP
