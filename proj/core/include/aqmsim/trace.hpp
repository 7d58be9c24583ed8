#ifndef AQMSIM_TRACE_HPP
#define AQMSIM_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aqmsim/time.hpp"

namespace aqmsim {

enum class TraceEvent { Enqueue, Dequeue, TailDrop, AqmDrop, Deliver };

std::string_view to_string(TraceEvent e);
TraceEvent trace_event_from_string(std::string_view s);

/// One row of the run trace. Times are decimal seconds with 9 digits in
/// the CSV rendering; optional columns are empty when not applicable.
struct TraceRow {
    SimTime time;
    TraceEvent event = TraceEvent::Enqueue;
    std::uint64_t pkt_id = 0;
    std::string flow;
    std::uint32_t size_bytes = 0;
    std::optional<double> sojourn_s;
    std::uint64_t qlen_bytes = 0;
    std::uint64_t qlen_pkts = 0;
    std::optional<double> gamma_s;
    std::optional<double> epsilon;
};

inline constexpr std::string_view kTraceHeader =
    "time_s,event,pkt_id,flow,size_bytes,sojourn_s,qlen_bytes,qlen_pkts,"
    "gamma_s,epsilon";

/// Streams rows as CSV with a fixed header and fixed 9-digit decimal
/// rendering, so identical runs produce byte-identical files.
class TraceWriter {
  public:
    explicit TraceWriter(std::ostream& out);
    void write(const TraceRow& row);
    std::uint64_t rows_written() const { return rows_; }

  private:
    std::ostream& out_;
    std::uint64_t rows_ = 0;
};

/// Parses a trace CSV produced by TraceWriter.
std::vector<TraceRow> read_trace(std::istream& in);

}  // namespace aqmsim

#endif  // AQMSIM_TRACE_HPP
