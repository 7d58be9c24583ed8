#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <vector>

#include "aqmsim/codel.hpp"

using namespace aqmsim;

namespace {

Packet make_packet(std::uint64_t id, std::uint32_t size_bytes = 1500) {
    Packet pkt;
    pkt.id = id;
    pkt.flow = "flow";
    pkt.size_bytes = size_bytes;
    return pkt;
}

}  // namespace

TEST_CASE("control law is t + interval / sqrt(count)") {
    CHECK(CodelControl::control_law(SimTime(), 1, 0.1) == seconds(0.1));
    CHECK(CodelControl::control_law(SimTime(), 4, 0.1) == seconds(0.05));
    // Independent arithmetic: 0.1 / 1.4142135623730951.
    double expected = 2.0 + 0.1 / 1.4142135623730951;
    CHECK(CodelControl::control_law(seconds(2.0), 2, 0.1).seconds() ==
          doctest::Approx(expected).epsilon(1e-9));
    CHECK_THROWS_AS(CodelControl::control_law(SimTime(), 0, 0.1), std::logic_error);
}

TEST_CASE("sojourn below target clears the above-target timer") {
    CodelControl control;
    control.should_drop(0.020, seconds(0.0), 10000);
    CHECK(control.first_above_time().has_value());
    CHECK_FALSE(control.should_drop(0.001, seconds(0.01), 10000));
    CHECK_FALSE(control.first_above_time().has_value());
}

TEST_CASE("a standing queue of one MTU or less never triggers") {
    CodelControl control;
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(control.should_drop(0.050, seconds(0.01 * i), 1500));
        CHECK_FALSE(control.first_above_time().has_value());
    }
}

TEST_CASE("persistently high sojourn arms after one full interval") {
    CodelControl control;  // target 5 ms, interval 100 ms
    CHECK_FALSE(control.should_drop(0.020, seconds(0.0), 10000));
    CHECK_FALSE(control.should_drop(0.020, seconds(0.050), 10000));
    CHECK_FALSE(control.should_drop(0.020, seconds(0.099999999), 10000));
    CHECK(control.should_drop(0.020, seconds(0.100), 10000));
    CHECK(control.should_drop(0.020, seconds(0.200), 10000));
}

TEST_CASE("a dip below target restarts the interval timer") {
    CodelControl control;
    // Exceeds at t=0, dips at t=0.05, exceeds again from t=0.06: no drop
    // opportunity before t=0.16.
    CHECK_FALSE(control.should_drop(0.020, seconds(0.0), 10000));
    CHECK_FALSE(control.should_drop(0.001, seconds(0.05), 10000));
    CHECK_FALSE(control.should_drop(0.020, seconds(0.06), 10000));
    CHECK_FALSE(control.should_drop(0.020, seconds(0.10), 10000));
    CHECK_FALSE(control.should_drop(0.020, seconds(0.159999999), 10000));
    CHECK(control.should_drop(0.020, seconds(0.160), 10000));
}

TEST_CASE("re-entry resumes count from saturation history") {
    CodelControl control;

    SUBCASE("recent re-entry backs count off by two") {
        control.enter_dropping(seconds(1.0));
        control.continue_dropping(seconds(1.1));
        control.continue_dropping(seconds(1.2));
        control.continue_dropping(seconds(1.3));
        CHECK(control.count() == 4);
        control.leave_dropping();
        CHECK(control.count() == 0);
        CHECK_FALSE(control.drop_next().has_value());
        control.enter_dropping(seconds(1.5));  // well within 16 intervals
        CHECK(control.count() == 2);
    }

    SUBCASE("re-entry after a long quiet period starts over at one") {
        control.enter_dropping(seconds(1.0));
        control.continue_dropping(seconds(1.1));
        control.continue_dropping(seconds(1.2));
        control.continue_dropping(seconds(1.3));
        control.leave_dropping();
        control.enter_dropping(seconds(10.0));  // > 16 * 0.1 s later
        CHECK(control.count() == 1);
    }

    SUBCASE("a short first episode also starts over at one") {
        control.enter_dropping(seconds(1.0));
        CHECK(control.count() == 1);
        control.leave_dropping();
        control.enter_dropping(seconds(1.2));
        CHECK(control.count() == 1);
    }
}

TEST_CASE("light load behaves exactly as FIFO with zero drops") {
    CoDelQueue codel;
    DropTailQueue fifo;
    std::mt19937_64 rng(11);
    SimTime now;

    for (int step = 0; step < 10000; ++step) {
        // Short inter-op gaps and a small standing backlog keep sojourns
        // far below the 5 ms target, so the control loop never engages.
        now += SimTime::from_ns(static_cast<std::int64_t>(rng() % 200000));
        auto size = static_cast<std::uint32_t>(100 + rng() % 1401);
        if (rng() % 2 == 0 && codel.occupancy().packet_length < 4) {
            codel.enqueue(make_packet(step, size), now);
            fifo.enqueue(make_packet(step, size), now);
        } else {
            // Dequeue quickly enough that sojourns never reach the target.
            auto a = codel.dequeue(now);
            auto b = fifo.dequeue(now);
            CHECK(a.has_value() == b.has_value());
            if (a && b) {
                CHECK(a->pkt.id == b->pkt.id);
                CHECK(a->sojourn_s == doctest::Approx(b->sojourn_s));
                CHECK(a->aqm_drops.empty());
            }
        }
    }
    CHECK(codel.occupancy().aqm_drops == 0);
}

TEST_CASE("sustained overload drops on the square-root schedule") {
    CoDelQueue codel;
    std::mt19937_64 rng(5);
    SimTime now;
    std::uint64_t next_id = 0;
    std::uint64_t delivered = 0;

    // Keep the buffer full and drain at 1500 bytes per ~7 ms, producing
    // standing sojourns of roughly 70 ms.
    auto refill = [&] {
        while (codel.enqueue(make_packet(next_id, 1500), now).outcome ==
               VerdictKind::Enqueued)
            ++next_id;
    };
    refill();
    for (int tick = 0; tick < 20000; ++tick) {
        now += SimTime::from_ns(7058824);
        auto result = codel.dequeue(now);
        if (result) ++delivered;
        refill();
    }

    const auto& log = codel.control().drop_log();
    REQUIRE(log.size() > 100);
    // Episode-ending drops schedule no successor, so the log can trail the
    // drop counter by at most one per episode.
    std::size_t episodes = 0;
    for (const auto& rec : log)
        if (rec.entered) ++episodes;
    CHECK(codel.occupancy().aqm_drops >= log.size());
    CHECK(codel.occupancy().aqm_drops - log.size() <= episodes);
    CHECK(delivered > 0);

    // Inside every episode the count advances by one per drop and the
    // drop_next spacing equals interval / sqrt(count); deltas shrink while
    // the count grows.
    int continuations = 0;
    for (std::size_t i = 1; i < log.size(); ++i) {
        if (log[i].entered) continue;
        ++continuations;
        CHECK(log[i].count == log[i - 1].count + 1);
        double delta = (log[i].drop_next - log[i - 1].drop_next).seconds();
        double expected = 0.1 / std::sqrt(static_cast<double>(log[i].count));
        CHECK(delta == doctest::Approx(expected).epsilon(1e-6));
        if (i >= 2 && !log[i - 1].entered) {
            double prev_delta =
                (log[i - 1].drop_next - log[i - 2].drop_next).seconds();
            CHECK(delta <= prev_delta + 1e-12);
        }
    }
    CHECK(continuations > 50);
}

TEST_CASE("congestion relief leaves the dropping state") {
    CoDelQueue codel;
    SimTime now;
    std::uint64_t next_id = 0;
    auto refill = [&] {
        while (codel.enqueue(make_packet(next_id, 1500), now).outcome ==
               VerdictKind::Enqueued)
            ++next_id;
    };
    refill();
    bool dropped = false;
    for (int tick = 0; tick < 1000 && !dropped; ++tick) {
        now += SimTime::from_ns(7058824);
        auto r = codel.dequeue(now);
        dropped = r && !r->aqm_drops.empty();
        refill();
    }
    REQUIRE(dropped);
    CHECK(codel.control().dropping());

    // Drain fast: sojourns collapse below target, dropping state ends.
    while (true) {
        now += SimTime::from_ns(100000);
        auto r = codel.dequeue(now);
        if (!r) break;
    }
    auto before = codel.occupancy().aqm_drops;
    now += seconds(1.0);
    codel.enqueue(make_packet(next_id++, 1000), now);
    auto r = codel.dequeue(now + SimTime::from_ns(1000000));
    REQUIRE(r.has_value());
    CHECK_FALSE(codel.control().dropping());
    CHECK(codel.occupancy().aqm_drops == before);
}

TEST_CASE("a lone resident packet is never dropped") {
    CoDelQueue codel;
    for (int round = 0; round < 20; ++round) {
        SimTime enq = seconds(10.0 * round);
        codel.enqueue(make_packet(round, 1500), enq);
        auto result = codel.dequeue(enq + seconds(5.0));  // huge sojourn
        REQUIRE(result.has_value());
        CHECK(result->pkt.id == static_cast<std::uint64_t>(round));
        CHECK(result->aqm_drops.empty());
    }
    CHECK(codel.occupancy().aqm_drops == 0);
}
