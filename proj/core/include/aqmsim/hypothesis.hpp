#ifndef AQMSIM_HYPOTHESIS_HPP
#define AQMSIM_HYPOTHESIS_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace aqmsim {

/// One-sided (greater) Welch t-test result. ci_lower is the 95% lower
/// confidence bound on the mean difference; the upper bound is unbounded.
struct TTestResult {
    double t_stat = 0.0;
    double df = 0.0;
    double p_value = 0.0;
    double ci_lower = 0.0;
};

/// Two-sided F-test of the variance ratio with a 95% CI on the ratio.
struct FTestResult {
    double f_stat = 0.0;
    std::int64_t df_num = 0;
    std::int64_t df_den = 0;
    double p_value = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
};

/// n normal draws with the given moments, via the inverse-CDF transform of
/// the engine's PRNG family. Deterministic for a fixed generator state.
std::vector<double> clt_sample(double mean, double stddev, std::size_t n,
                               std::mt19937_64& rng);

/// Welch two-sample t-test, alternative: mean(a) - mean(b) > 0.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// F-test of var(a) / var(b), two-sided.
FTestResult f_test(std::span<const double> a, std::span<const double> b);

enum class TailDist { StudentT, F };

/// Upper-tail probability P(X >= x). For StudentT, d1 is the degrees of
/// freedom and d2 is ignored.
double tail_probability(TailDist dist, double d1, double d2, double x);

}  // namespace aqmsim

#endif  // AQMSIM_HYPOTHESIS_HPP
