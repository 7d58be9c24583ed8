#include "aqmsim/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace aqmsim {

CbrSource::CbrSource(Engine& engine, CbrConfig config, std::string flow,
                     PacketSink sink)
    : engine_(engine), config_(config), flow_(std::move(flow)),
      sink_(std::move(sink)) {
    if (config_.rate_bps <= 0.0)
        throw std::invalid_argument("CbrSource: rate must be positive");
    if (config_.packet_size_bytes == 0 || config_.packet_size_bytes > kMtuBytes)
        throw std::invalid_argument("CbrSource: packet size must be in (0, MTU]");
    period_ = SimTime::from_ns(static_cast<std::int64_t>(
        std::llround(config_.packet_size_bytes * 8.0 * 1e9 / config_.rate_bps)));
}

void CbrSource::start() {
    engine_.schedule(config_.start_at, [this] { emit(); });
}

void CbrSource::emit() {
    Packet pkt;
    pkt.id = next_packet_id_++;
    pkt.flow = flow_;
    pkt.size_bytes = config_.packet_size_bytes;
    pkt.protocol = Protocol::Udp;
    pkt.created_at = engine_.now();
    ++emitted_;
    engine_.schedule(engine_.now() + period_, [this] { emit(); });
    sink_(std::move(pkt));
}

TcpSender::TcpSender(Engine& engine, TcpConfig config, std::string flow,
                     PacketSink sink)
    : engine_(engine), config_(config), flow_(std::move(flow)),
      sink_(std::move(sink)), rtt_(config.rtt_alpha),
      ssthresh_(config.init_ssthresh), rto_s_(config.min_rto_s) {}

void TcpSender::start() { fill_window(); }

void TcpSender::send_segment(std::uint64_t seq, bool retransmit) {
    Packet pkt;
    pkt.id = next_packet_id_++;
    pkt.flow = flow_;
    pkt.size_bytes = config_.data_bytes;
    pkt.protocol = Protocol::TcpData;
    pkt.created_at = engine_.now();
    pkt.seq = seq;
    pkt.retransmit = retransmit;
    if (retransmit) {
        retransmitted_.insert(seq);
        send_time_.erase(seq);
    } else {
        send_time_[seq] = engine_.now();
    }
    sink_(std::move(pkt));
}

void TcpSender::fill_window() {
    auto window = static_cast<std::uint64_t>(std::ceil(cwnd_));
    while (in_flight() < window) {
        send_segment(next_seq_, /*retransmit=*/false);
        ++next_seq_;
    }
    arm_timer();
}

void TcpSender::arm_timer() {
    if (timer_) {
        engine_.cancel(*timer_);
        timer_.reset();
    }
    if (in_flight() == 0) return;
    timer_ = engine_.schedule(engine_.now() + SimTime::from_seconds(rto_s_),
                              [this] { on_timeout(); });
}

void TcpSender::on_ack(std::uint64_t ack_seq) {
    if (ack_seq > next_seq_) return;  // stale state, should not happen
    if (ack_seq <= highest_acked_) {
        if (in_flight() == 0) return;
        ++dup_acks_;
        if (dup_acks_ == 3) {
            // Fast retransmit with simplified recovery: halve and resend
            // the missing segment.
            ssthresh_ = std::max(cwnd_ / 2.0, 2.0);
            cwnd_ = ssthresh_;
            send_segment(highest_acked_, /*retransmit=*/true);
            arm_timer();
        }
        return;
    }

    // Karn's rule: only never-retransmitted segments yield RTT samples.
    std::uint64_t newest = ack_seq - 1;
    auto it = send_time_.find(newest);
    if (it != send_time_.end() && !retransmitted_.count(newest)) {
        rtt_.update((engine_.now() - it->second).seconds());
        rto_s_ = std::clamp(2.0 * rtt_.estimate(), config_.min_rto_s,
                            config_.max_rto_s);
    }
    for (std::uint64_t s = highest_acked_; s < ack_seq; ++s) {
        send_time_.erase(s);
        retransmitted_.erase(s);
    }
    std::uint64_t advanced = ack_seq - highest_acked_;
    highest_acked_ = ack_seq;
    dup_acks_ = 0;
    for (std::uint64_t i = 0; i < advanced; ++i) {
        if (cwnd_ < ssthresh_)
            cwnd_ += 1.0;
        else
            cwnd_ += 1.0 / cwnd_;
    }
    fill_window();
}

void TcpSender::on_timeout() {
    timer_.reset();
    ssthresh_ = std::max(cwnd_ / 2.0, 2.0);
    cwnd_ = 1.0;
    rto_s_ = std::min(rto_s_ * 2.0, config_.max_rto_s);
    dup_acks_ = 0;
    send_segment(highest_acked_, /*retransmit=*/true);
    arm_timer();
}

void TcpReceiver::on_data(const Packet& pkt, SimTime now) {
    if (pkt.seq >= expected_seq_) {
        if (pkt.seq == expected_seq_) {
            ++expected_seq_;
            auto it = out_of_order_.begin();
            while (it != out_of_order_.end() && *it == expected_seq_) {
                ++expected_seq_;
                it = out_of_order_.erase(it);
            }
            // Segments below the new cumulative point can be forgotten.
            out_of_order_.erase(out_of_order_.begin(),
                                out_of_order_.lower_bound(expected_seq_));
        } else {
            out_of_order_.insert(pkt.seq);
        }
    }
    Packet ack;
    ack.id = next_ack_id_++;
    ack.flow = flow_;
    ack.size_bytes = 40;
    ack.protocol = Protocol::TcpAck;
    ack.created_at = now;
    ack.seq = expected_seq_;
    ack_sink_(std::move(ack));
}

}  // namespace aqmsim
