#include "aqmsim/trace.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aqmsim {
namespace {

std::string format_opt(const std::optional<double>& v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9f", *v);
    return buf;
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

}  // namespace

std::string_view to_string(TraceEvent e) {
    switch (e) {
        case TraceEvent::Enqueue: return "enqueue";
        case TraceEvent::Dequeue: return "dequeue";
        case TraceEvent::TailDrop: return "tail_drop";
        case TraceEvent::AqmDrop: return "aqm_drop";
        case TraceEvent::Deliver: return "deliver";
    }
    throw std::logic_error("to_string: unknown trace event");
}

TraceEvent trace_event_from_string(std::string_view s) {
    if (s == "enqueue") return TraceEvent::Enqueue;
    if (s == "dequeue") return TraceEvent::Dequeue;
    if (s == "tail_drop") return TraceEvent::TailDrop;
    if (s == "aqm_drop") return TraceEvent::AqmDrop;
    if (s == "deliver") return TraceEvent::Deliver;
    throw std::runtime_error("trace_event_from_string: unknown event '" +
                             std::string(s) + "'");
}

TraceWriter::TraceWriter(std::ostream& out) : out_(out) {
    out_ << kTraceHeader << '\n';
}

void TraceWriter::write(const TraceRow& row) {
    out_ << row.time.to_string() << ',' << to_string(row.event) << ','
         << row.pkt_id << ',' << row.flow << ',' << row.size_bytes << ','
         << format_opt(row.sojourn_s) << ',' << row.qlen_bytes << ','
         << row.qlen_pkts << ',' << format_opt(row.gamma_s) << ','
         << format_opt(row.epsilon) << '\n';
    ++rows_;
}

std::vector<TraceRow> read_trace(std::istream& in) {
    std::vector<TraceRow> rows;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_trace: empty trace file");
    if (line != kTraceHeader)
        throw std::runtime_error("read_trace: unexpected header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 10) fields.emplace_back();
        if (fields.size() != 10)
            throw std::runtime_error("read_trace: malformed row: " + line);
        TraceRow row;
        row.time = SimTime::from_seconds(std::stod(fields[0]));
        row.event = trace_event_from_string(fields[1]);
        row.pkt_id = std::stoull(fields[2]);
        row.flow = fields[3];
        row.size_bytes = static_cast<std::uint32_t>(std::stoul(fields[4]));
        row.sojourn_s = parse_opt(fields[5]);
        row.qlen_bytes = std::stoull(fields[6]);
        row.qlen_pkts = std::stoull(fields[7]);
        row.gamma_s = parse_opt(fields[8]);
        row.epsilon = parse_opt(fields[9]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace aqmsim
