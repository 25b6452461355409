#pragma once

#include <gfvc/errors.hpp>

namespace gfvc::specfun {

/// Value plus a conservative absolute-error claim.
struct SpecFunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

/// Gamma function for x > 0 (Lanczos approximation; the x<1 range is reached
/// through the recurrence Gamma(x) = Gamma(x+1)/x, never reflection).
double gamma(double x);

/// log Gamma(x) for x > 0, valid also where Gamma itself would overflow.
double log_gamma(double x);

/// 1/Gamma(x), total on the real line (zero at the poles x = 0, -1, -2, ...).
double recip_gamma(double x);

/// Lower incomplete gamma gamma(beta, t) = int_0^t s^(beta-1) e^(-s) ds,
/// beta > 0, t >= 0.  Series for small t, continued fraction for large t.
double lower_incomplete_gamma(double beta, double t);

/// Complementary error function.
double erfc(double z);

/// Scaled complement exp(z^2) erfc(z) for z >= 0; stays representable where
/// exp(z^2) alone would overflow.
double erfcx(double z);

/// Bessel function J_nu(x), nu >= -1, x >= 0.  Ascending series for
/// x <= 15, Hankel asymptotic expansion beyond.
double bessel_j(double nu, double x);

/// Modified Bessel function I_nu(x), nu >= -1, x >= 0 (ascending series;
/// all terms positive, so the series is stable on the whole range used).
double bessel_i(double nu, double x);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) by direct power
/// series with compensated summation.  Throws AccuracyError if the series
/// has not converged within the term budget.
double mittag_leffler(double alpha, double beta, double z);
SpecFunResult mittag_leffler_r(double alpha, double beta, double z);

/// Kummer confluent hypergeometric function Phi(b, a; z) = 1F1(b; a; z).
/// Throws DomainError if `a` is a nonpositive integer.
double kummer(double b, double a, double z);
SpecFunResult kummer_r(double b, double a, double z);

}  // namespace gfvc::specfun
