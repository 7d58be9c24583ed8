#include "aqmsim/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aqmsim/rng.hpp"
#include "aqmsim/special.hpp"
#include "aqmsim/stats.hpp"

namespace aqmsim {
namespace {

RunningStats accumulate(std::span<const double> xs) {
    RunningStats acc;
    for (double x : xs) acc.push(x);
    return acc;
}

}  // namespace

std::vector<double> clt_sample(double mean, double stddev, std::size_t n,
                               std::mt19937_64& rng) {
    if (stddev < 0.0)
        throw std::invalid_argument("clt_sample: stddev must be nonnegative");
    if (n == 0) throw std::invalid_argument("clt_sample: n must be >= 1");
    std::vector<double> draws;
    draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = uniform01(rng);
        draws.push_back(stddev == 0.0 ? mean : mean + stddev * normal_quantile(u));
    }
    return draws;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: each sample needs n >= 2");
    RunningStats sa = accumulate(a);
    RunningStats sb = accumulate(b);
    double va = sa.variance_sample();
    double vb = sb.variance_sample();
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    double se2 = va / na + vb / nb;
    if (se2 <= 0.0)
        throw std::invalid_argument("welch_t_test: both samples are degenerate");

    TTestResult r;
    double diff = sa.mean() - sb.mean();
    r.t_stat = diff / std::sqrt(se2);
    r.df = se2 * se2 /
           (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
    r.p_value = student_t_upper_tail(r.df, r.t_stat);
    r.ci_lower = diff - student_t_quantile(r.df, 0.95) * std::sqrt(se2);
    return r;
}

FTestResult f_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("f_test: each sample needs n >= 2");
    RunningStats sa = accumulate(a);
    RunningStats sb = accumulate(b);
    double va = sa.variance_sample();
    double vb = sb.variance_sample();
    if (va <= 0.0 || vb <= 0.0)
        throw std::invalid_argument("f_test: zero-variance sample");

    FTestResult r;
    r.f_stat = va / vb;
    r.df_num = static_cast<std::int64_t>(a.size()) - 1;
    r.df_den = static_cast<std::int64_t>(b.size()) - 1;
    double d1 = static_cast<double>(r.df_num);
    double d2 = static_cast<double>(r.df_den);
    double lower = f_cdf(d1, d2, r.f_stat);
    r.p_value = 2.0 * std::min(lower, 1.0 - lower);
    r.p_value = std::min(r.p_value, 1.0);
    r.ci_lower = r.f_stat / f_quantile(d1, d2, 0.975);
    r.ci_upper = r.f_stat / f_quantile(d1, d2, 0.025);
    return r;
}

double tail_probability(TailDist dist, double d1, double d2, double x) {
    switch (dist) {
        case TailDist::StudentT:
            return student_t_upper_tail(d1, x);
        case TailDist::F:
            return 1.0 - f_cdf(d1, d2, x);
    }
    throw std::invalid_argument("tail_probability: unknown distribution");
}

}  // namespace aqmsim
