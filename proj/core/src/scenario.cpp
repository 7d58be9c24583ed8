#include "aqmsim/scenario.hpp"

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace aqmsim {
namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw std::runtime_error("scenario: expected boolean, got '" + v + "'");
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(QdiscKind k) {
    switch (k) {
        case QdiscKind::DropTail: return "droptail";
        case QdiscKind::Red: return "red";
        case QdiscKind::Codel: return "codel";
        case QdiscKind::LstfCodel: return "lstfcodel";
    }
    throw std::logic_error("to_string: unknown qdisc kind");
}

QdiscKind qdisc_kind_from_string(std::string_view s) {
    if (s == "droptail") return QdiscKind::DropTail;
    if (s == "red") return QdiscKind::Red;
    if (s == "codel") return QdiscKind::Codel;
    if (s == "lstfcodel") return QdiscKind::LstfCodel;
    throw std::runtime_error("unknown qdisc '" + std::string(s) +
                             "' (expected droptail|red|codel|lstfcodel)");
}

void Scenario::validate() const {
    if (duration_s <= 0.0) throw std::runtime_error("scenario: duration must be positive");
    if (capacity_bytes < kMtuBytes)
        throw std::runtime_error("scenario: queue capacity below one MTU");
    if (codel.target_s <= 0.0 || codel.interval_s <= 0.0)
        throw std::runtime_error("scenario: codel target/interval must be positive");
    if (codel.target_s >= codel.interval_s)
        throw std::runtime_error("scenario: codel target must be below interval");
    if (lstfcodel.alpha < 0.0 || lstfcodel.alpha > 1.0)
        throw std::runtime_error("scenario: lstfcodel.alpha must be in [0, 1]");
    if (!(red.min_th_bytes < red.max_th_bytes))
        throw std::runtime_error("scenario: red.min_th_bytes must be below red.max_th_bytes");
    if (tcp.rtt_alpha < 0.0 || tcp.rtt_alpha > 1.0)
        throw std::runtime_error("scenario: tcp.alpha must be in [0, 1]");
    if (cbr.rate_bps <= 0.0) throw std::runtime_error("scenario: cbr.rate_bps must be positive");
    if (cbr.packet_size_bytes == 0 || cbr.packet_size_bytes > kMtuBytes)
        throw std::runtime_error("scenario: cbr.packet_bytes must be in (0, MTU]");
    for (const auto* link : {&client_a_link, &client_b_link, &egress_link}) {
        if (link->rate_bps <= 0.0)
            throw std::runtime_error("scenario: link rates must be positive");
        if (link->prop_delay_s < 0.0)
            throw std::runtime_error("scenario: propagation delay must be nonnegative");
    }
}

void apply_setting(Scenario& s, const std::string& key, const std::string& value) {
    try {
        if (key == "duration_s") s.duration_s = std::stod(value);
        else if (key == "seed") s.seed = std::stoull(value);
        else if (key == "qdisc") s.qdisc = qdisc_kind_from_string(value);
        else if (key == "qdisc.capacity_bytes") s.capacity_bytes = std::stoull(value);
        else if (key == "codel.target_s") s.codel.target_s = std::stod(value);
        else if (key == "codel.interval_s") s.codel.interval_s = std::stod(value);
        else if (key == "lstfcodel.alpha") s.lstfcodel.alpha = std::stod(value);
        else if (key == "lstfcodel.drop_next_influence")
            s.lstfcodel.drop_next_influence = parse_bool(value);
        else if (key == "red.w_q") s.red.w_q = std::stod(value);
        else if (key == "red.min_th_bytes") s.red.min_th_bytes = std::stod(value);
        else if (key == "red.max_th_bytes") s.red.max_th_bytes = std::stod(value);
        else if (key == "red.max_p") s.red.max_p = std::stod(value);
        else if (key == "red.idle_slot_s") s.red.idle_slot_s = std::stod(value);
        else if (key == "ftp.enabled") s.ftp_enabled = parse_bool(value);
        else if (key == "tcp.alpha") s.tcp.rtt_alpha = std::stod(value);
        else if (key == "tcp.init_ssthresh") s.tcp.init_ssthresh = std::stod(value);
        else if (key == "cbr.enabled") s.cbr_enabled = parse_bool(value);
        else if (key == "cbr.rate_bps") s.cbr.rate_bps = std::stod(value);
        else if (key == "cbr.packet_bytes")
            s.cbr.packet_size_bytes = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "cbr.start_s") s.cbr.start_at = SimTime::from_seconds(std::stod(value));
        else if (key == "link.client_a.rate_bps") s.client_a_link.rate_bps = std::stod(value);
        else if (key == "link.client_a.delay_s") s.client_a_link.prop_delay_s = std::stod(value);
        else if (key == "link.client_b.rate_bps") s.client_b_link.rate_bps = std::stod(value);
        else if (key == "link.client_b.delay_s") s.client_b_link.prop_delay_s = std::stod(value);
        else if (key == "link.egress.rate_bps") s.egress_link.rate_bps = std::stod(value);
        else if (key == "link.egress.delay_s") s.egress_link.prop_delay_s = std::stod(value);
        else throw std::runtime_error("scenario: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("scenario: bad value '" + value + "' for key '" + key + "'");
    }
}

Scenario parse_scenario(std::istream& in) {
    Scenario s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("scenario: line " + std::to_string(lineno) +
                                     " is not 'key = value'");
        apply_setting(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return s;
}

std::string Scenario::to_text() const {
    std::ostringstream out;
    out << "duration_s = " << fmt(duration_s) << '\n';
    out << "seed = " << seed << '\n';
    out << "qdisc = " << to_string(qdisc) << '\n';
    out << "qdisc.capacity_bytes = " << capacity_bytes << '\n';
    out << "codel.target_s = " << fmt(codel.target_s) << '\n';
    out << "codel.interval_s = " << fmt(codel.interval_s) << '\n';
    out << "lstfcodel.alpha = " << fmt(lstfcodel.alpha) << '\n';
    out << "lstfcodel.drop_next_influence = "
        << (lstfcodel.drop_next_influence ? "true" : "false") << '\n';
    out << "red.w_q = " << fmt(red.w_q) << '\n';
    out << "red.min_th_bytes = " << fmt(red.min_th_bytes) << '\n';
    out << "red.max_th_bytes = " << fmt(red.max_th_bytes) << '\n';
    out << "red.max_p = " << fmt(red.max_p) << '\n';
    out << "red.idle_slot_s = " << fmt(red.idle_slot_s) << '\n';
    out << "ftp.enabled = " << (ftp_enabled ? "true" : "false") << '\n';
    out << "tcp.alpha = " << fmt(tcp.rtt_alpha) << '\n';
    out << "tcp.init_ssthresh = " << fmt(tcp.init_ssthresh) << '\n';
    out << "cbr.enabled = " << (cbr_enabled ? "true" : "false") << '\n';
    out << "cbr.rate_bps = " << fmt(cbr.rate_bps) << '\n';
    out << "cbr.packet_bytes = " << cbr.packet_size_bytes << '\n';
    out << "cbr.start_s = " << fmt(cbr.start_at.seconds()) << '\n';
    out << "link.client_a.rate_bps = " << fmt(client_a_link.rate_bps) << '\n';
    out << "link.client_a.delay_s = " << fmt(client_a_link.prop_delay_s) << '\n';
    out << "link.client_b.rate_bps = " << fmt(client_b_link.rate_bps) << '\n';
    out << "link.client_b.delay_s = " << fmt(client_b_link.prop_delay_s) << '\n';
    out << "link.egress.rate_bps = " << fmt(egress_link.rate_bps) << '\n';
    out << "link.egress.delay_s = " << fmt(egress_link.prop_delay_s) << '\n';
    return out.str();
}

}  // namespace aqmsim
