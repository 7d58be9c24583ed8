#ifndef AQMSIM_TRAFFIC_HPP
#define AQMSIM_TRAFFIC_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "aqmsim/engine.hpp"
#include "aqmsim/packet.hpp"

namespace aqmsim {

/// Classical EWMA round-trip-time estimator:
/// estimate' = (1 - alpha) * estimate + alpha * sample.
class RttEstimator {
  public:
    explicit RttEstimator(double alpha = 0.125, double initial_s = 0.0)
        : alpha_(alpha), estimate_(initial_s) {
        if (alpha < 0.0 || alpha > 1.0)
            throw std::invalid_argument("RttEstimator: alpha must be in [0, 1]");
    }

    void update(double sample_s) {
        if (sample_s < 0.0)
            throw std::logic_error("RttEstimator::update: negative sample");
        last_sample_ = sample_s;
        estimate_ = (1.0 - alpha_) * estimate_ + alpha_ * sample_s;
    }

    double alpha() const { return alpha_; }
    double estimate() const { return estimate_; }
    double last_sample() const { return last_sample_; }

  private:
    double alpha_;
    double estimate_;
    double last_sample_ = 0.0;
};

using PacketSink = std::function<void(Packet)>;

struct CbrConfig {
    double rate_bps = 1.5e6;
    std::uint32_t packet_size_bytes = 1000;
    SimTime start_at = SimTime::from_seconds(300.0);
};

/// Constant-bit-rate source: one packet every
/// packet_size_bytes * 8 / rate_bps seconds, congestion-insensitive.
class CbrSource {
  public:
    CbrSource(Engine& engine, CbrConfig config, std::string flow, PacketSink sink);

    void start();

    /// Emission period, exact in integer nanoseconds.
    SimTime period() const { return period_; }
    std::uint64_t emitted() const { return emitted_; }

  private:
    void emit();

    Engine& engine_;
    CbrConfig config_;
    std::string flow_;
    PacketSink sink_;
    SimTime period_;
    std::uint64_t emitted_ = 0;
    std::uint64_t next_packet_id_ = 0;
};

struct TcpConfig {
    double rtt_alpha = 0.125;
    double init_ssthresh = 64.0;
    std::uint32_t data_bytes = kMtuBytes;
    double min_rto_s = 0.2;
    double max_rto_s = 60.0;
};

/// Simplified Reno sender: always-backlogged, slow start, congestion
/// avoidance, triple-duplicate halving, timeout reset with exponential
/// backoff, Karn's rule for RTT samples.
class TcpSender {
  public:
    TcpSender(Engine& engine, TcpConfig config, std::string flow, PacketSink sink);

    void start();

    /// Cumulative ACK arrival; ack_seq is the receiver's next expected
    /// sequence number.
    void on_ack(std::uint64_t ack_seq);

    double cwnd() const { return cwnd_; }
    double ssthresh() const { return ssthresh_; }
    std::uint64_t in_flight() const { return next_seq_ - highest_acked_; }
    double rto_s() const { return rto_s_; }
    const RttEstimator& rtt() const { return rtt_; }

  private:
    void fill_window();
    void send_segment(std::uint64_t seq, bool retransmit);
    void arm_timer();
    void on_timeout();

    Engine& engine_;
    TcpConfig config_;
    std::string flow_;
    PacketSink sink_;
    RttEstimator rtt_;

    double cwnd_ = 1.0;
    double ssthresh_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t highest_acked_ = 0;
    double rto_s_;
    std::optional<EventHandle> timer_;
    std::uint32_t dup_acks_ = 0;
    std::uint64_t next_packet_id_ = 0;
    std::map<std::uint64_t, SimTime> send_time_;
    std::set<std::uint64_t> retransmitted_;
};

/// In-order reassembly endpoint; answers every data segment with a
/// cumulative 40-byte ACK.
class TcpReceiver {
  public:
    TcpReceiver(std::string flow, PacketSink ack_sink)
        : flow_(std::move(flow)), ack_sink_(std::move(ack_sink)) {}

    void on_data(const Packet& pkt, SimTime now);

    std::uint64_t expected_seq() const { return expected_seq_; }

  private:
    std::string flow_;
    PacketSink ack_sink_;
    std::uint64_t expected_seq_ = 0;
    std::set<std::uint64_t> out_of_order_;
    std::uint64_t next_ack_id_ = 0;
};

}  // namespace aqmsim

#endif  // AQMSIM_TRAFFIC_HPP
