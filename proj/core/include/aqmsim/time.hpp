#ifndef AQMSIM_TIME_HPP
#define AQMSIM_TIME_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>

namespace aqmsim {

/// Virtual simulation time. Integer nanoseconds internally so event
/// ordering never depends on floating-point rounding; rendered as
/// decimal seconds externally.
class SimTime {
  public:
    constexpr SimTime() = default;

    static constexpr SimTime from_ns(std::int64_t ns) { return SimTime(ns); }

    static SimTime from_seconds(double s) {
        return SimTime(static_cast<std::int64_t>(std::llround(s * 1e9)));
    }

    constexpr std::int64_t ns() const { return ns_; }
    constexpr double seconds() const { return static_cast<double>(ns_) * 1e-9; }

    /// Decimal seconds with exactly 9 fractional digits, e.g. "1.234000000".
    std::string to_string() const {
        char buf[40];
        std::int64_t whole = ns_ / 1000000000;
        std::int64_t frac = ns_ % 1000000000;
        if (frac < 0) {
            whole -= 1;
            frac += 1000000000;
        }
        std::snprintf(buf, sizeof(buf), "%lld.%09lld",
                      static_cast<long long>(whole), static_cast<long long>(frac));
        return buf;
    }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(ns_ + o.ns_); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(ns_ - o.ns_); }
    constexpr SimTime& operator+=(SimTime o) {
        ns_ += o.ns_;
        return *this;
    }

  private:
    constexpr explicit SimTime(std::int64_t ns) : ns_(ns) {}
    std::int64_t ns_ = 0;
};

inline SimTime seconds(double s) { return SimTime::from_seconds(s); }

}  // namespace aqmsim

#endif  // AQMSIM_TIME_HPP
