#ifndef SBELL_SPECIAL_HPP
#define SBELL_SPECIAL_HPP

#include "sbell/real.hpp"

namespace sbell::special {

/// ln Gamma(x), x > 0.
Real log_gamma(const Real& x);

/// Modified Bessel function I_nu(z), nu >= 0 real (or any integer via
/// I_{-n} = I_n), z >= 0, summed from the ascending power series in log
/// space.  rel_tol <= 0 picks a tolerance matching the working precision.
LogReal bessel_i(const Real& nu, const Real& z, const Real& rel_tol = Real(0));
LogReal bessel_i(long n, const Real& z, const Real& rel_tol = Real(0));

/// I_n(1) via trapezoidal quadrature of exp(cos t) cos(nt) over a period —
/// spectrally accurate, used as an independent cross-check of the series.
/// The working precision is raised internally to resolve the cancellation
/// (the integrand is O(1) while I_n(1) ~ 2^{-n}/n!).
Real bessel_i_quadrature(long n);

/// Sandwich for I_n(2 sqrt(lambda)): the k = 0 series term from below, and
/// the factorial comparison from above.  The upper estimate requires n >= 1;
/// for n = 0 the returned upper bound is exp(lambda).
struct BesselBounds {
    LogReal lower;
    LogReal upper;
};
BesselBounds bessel_bounds(long n, const Real& lambda);

/// P(xi - eta = n) for independent xi ~ Poisson(lambda), eta ~ Poisson(mu).
Real skellam_pmf(long n, const Real& lambda, const Real& mu);

} // namespace sbell::special

#endif
