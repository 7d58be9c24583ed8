#ifndef AQMSIM_SPECIAL_HPP
#define AQMSIM_SPECIAL_HPP

namespace aqmsim {

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation (modified Lentz).
double regularized_incomplete_beta(double a, double b, double x);

/// Upper-tail probability P(T >= x) of Student's t with df degrees of
/// freedom.
double student_t_upper_tail(double df, double x);

/// Lower-tail CDF P(F <= x) of the F distribution with (d1, d2) degrees of
/// freedom.
double f_cdf(double d1, double d2, double x);

/// p-quantile of Student's t (lower tail).
double student_t_quantile(double df, double p);

/// p-quantile of the F distribution (lower tail).
double f_quantile(double d1, double d2, double p);

/// Inverse standard normal CDF (Acklam's rational approximation with one
/// Halley refinement step).
double normal_quantile(double p);

}  // namespace aqmsim

#endif  // AQMSIM_SPECIAL_HPP
