#ifndef AQMSIM_SCENARIO_HPP
#define AQMSIM_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "aqmsim/codel.hpp"
#include "aqmsim/lstfcodel.hpp"
#include "aqmsim/red.hpp"
#include "aqmsim/traffic.hpp"

namespace aqmsim {

enum class QdiscKind { DropTail, Red, Codel, LstfCodel };

std::string_view to_string(QdiscKind k);
QdiscKind qdisc_kind_from_string(std::string_view s);

struct LinkSettings {
    double rate_bps = 0.0;
    double prop_delay_s = 0.001;
};

/// Full run description: the star topology (two clients, one router, one
/// server), the discipline under test on the router's server-facing
/// egress, traffic settings, duration, and seed.
struct Scenario {
    double duration_s = 600.0;
    std::uint64_t seed = 1;

    QdiscKind qdisc = QdiscKind::Codel;
    std::uint64_t capacity_bytes = 15000;
    CodelParams codel;
    LstfParams lstfcodel;
    RedParams red;

    bool ftp_enabled = true;
    TcpConfig tcp;
    bool cbr_enabled = true;
    CbrConfig cbr;

    LinkSettings client_a_link{2.0e6, 0.001};
    LinkSettings client_b_link{1.5e6, 0.001};
    LinkSettings egress_link{1.7e6, 0.001};

    /// Rejects inconsistent settings with a descriptive message.
    void validate() const;

    /// Canonical flat key=value rendering; parsing it back reproduces the
    /// scenario.
    std::string to_text() const;
};

/// Parses the flat key = value scenario format ('#' starts a comment).
/// Unknown keys are rejected.
Scenario parse_scenario(std::istream& in);

/// Applies one key=value override on top of an existing scenario.
void apply_setting(Scenario& s, const std::string& key, const std::string& value);

}  // namespace aqmsim

#endif  // AQMSIM_SCENARIO_HPP
