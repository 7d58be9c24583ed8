#ifndef AQMSIM_STATS_HPP
#define AQMSIM_STATS_HPP

#include <cmath>
#include <cstdint>

namespace aqmsim {

/// Incremental mean/variance accumulator (Welford's recurrence).
/// Exposes both population and sample variance; accumulators are plain
/// values and may be merged.
class RunningStats {
  public:
    void push(double x) {
        ++n_;
        double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    void merge(const RunningStats& other) {
        if (other.n_ == 0) return;
        if (n_ == 0) {
            *this = other;
            return;
        }
        double na = static_cast<double>(n_);
        double nb = static_cast<double>(other.n_);
        double delta = other.mean_ - mean_;
        double n_total = na + nb;
        mean_ += delta * nb / n_total;
        m2_ += other.m2_ + delta * delta * na * nb / n_total;
        n_ += other.n_;
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance_population() const {
        return n_ > 0 ? m2_ / static_cast<double>(n_) : 0.0;
    }
    double variance_sample() const {
        return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    }
    double stddev_population() const { return std::sqrt(variance_population()); }
    double stddev_sample() const { return std::sqrt(variance_sample()); }

  private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace aqmsim

#endif  // AQMSIM_STATS_HPP
