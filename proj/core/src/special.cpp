#include "aqmsim/special.hpp"

#include <cmath>
#include <stdexcept>

namespace aqmsim {
namespace {

// Continued fraction for the incomplete beta function, modified Lentz.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kFpMin = 1e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    return h;
}

// Bisection for an increasing CDF on a positive half-line bracket.
template <typename Cdf>
double invert_cdf(Cdf cdf, double p, double lo, double hi) {
    while (cdf(hi) < p && hi < 1e12) {
        lo = hi;
        hi *= 2.0;
    }
    while (cdf(lo) > p && lo > 1e-300) {
        hi = lo;
        lo *= 0.5;
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_upper_tail(double df, double x) {
    if (df <= 0.0)
        throw std::invalid_argument("student_t_upper_tail: df must be positive");
    double p_half = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, df / (df + x * x));
    return x >= 0.0 ? p_half : 1.0 - p_half;
}

double f_cdf(double d1, double d2, double x) {
    if (d1 <= 0.0 || d2 <= 0.0)
        throw std::invalid_argument("f_cdf: degrees of freedom must be positive");
    if (x <= 0.0) return 0.0;
    return regularized_incomplete_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

double student_t_quantile(double df, double p) {
    if (p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("student_t_quantile: p must be in (0, 1)");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -student_t_quantile(df, 1.0 - p);
    auto cdf = [df](double x) { return 1.0 - student_t_upper_tail(df, x); };
    return invert_cdf(cdf, p, 1e-8, 2.0);
}

double f_quantile(double d1, double d2, double p) {
    if (p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("f_quantile: p must be in (0, 1)");
    auto cdf = [d1, d2](double x) { return f_cdf(d1, d2, x); };
    return invert_cdf(cdf, p, 1e-8, 1.0);
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley refinement step against the exact CDF.
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

}  // namespace aqmsim
