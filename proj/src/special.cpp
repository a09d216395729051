#include "sbell/special.hpp"

#include <cmath>
#include <cstdlib>

#include "sbell/errors.hpp"

namespace sbell::special {

Real log_gamma(const Real& x) {
    if (x.sign() <= 0) throw domain_error("log_gamma: x must be positive");
    return lgamma_pos(x);
}

LogReal bessel_i(const Real& nu, const Real& z, const Real& rel_tol) {
    if (z.sign() < 0) throw domain_error("bessel_i: z must be nonnegative");
    if (nu.sign() < 0) throw domain_error("bessel_i: nu must be nonnegative (use the integer overload)");
    if (z.is_zero()) {
        if (nu.is_zero()) return LogReal::one();
        return LogReal::zero();
    }
    Real tol = rel_tol;
    if (tol.sign() <= 0)
        tol = pow(Real(10), -static_cast<long>(Real::default_digits() + 5));

    const Real lhalfz = log(z / 2);
    const Real x = z * z / 4;          // term ratio driver
    const Real lx = log(x);
    // ln t_k = nu ln(z/2) - ln Gamma(nu+1) + k ln(z^2/4) - ln k! - ln[(nu+1)...(nu+k)]
    const Real prefix = nu * lhalfz - lgamma_pos(nu + 1);
    const Real shift = prefix;
    Real acc(1);                       // sum of exp(lt - shift), k = 0 term included
    Real lkfact(0), lrising(0);        // running ln k!, ln[(nu+1)...(nu+k)]
    const double peak = x.to_double(); // terms decay once k > z^2/4
    for (long k = 1; k < 100000; ++k) {
        lkfact += log(Real(k));
        lrising += log(nu + k);
        Real d = Real(k) * lx - lkfact - lrising;   // = lt - shift
        Real t = exp(d);
        acc += t;
        if (k > peak && t < tol * acc)
            return LogReal::from_log(1, shift + log(acc));
    }
    throw truncation_error("bessel_i: series did not converge");
}

LogReal bessel_i(long n, const Real& z, const Real& rel_tol) {
    if (n < 0) n = -n;   // I_{-n} = I_n for integer order
    return bessel_i(Real(n), z, rel_tol);
}

Real bessel_i_quadrature(long n) {
    if (n < 0) throw domain_error("bessel_i_quadrature: n must be >= 0");
    // Cancellation scale: I_n(1) ~ 2^{-n}/n!, integrand is O(1).  The bump
    // absorbs it; the caller's precision is the agreement target.
    const unsigned target_digits = Real::default_digits();
    double lost = (n * std::log(2.0) + std::lgamma(static_cast<double>(n) + 1.0)) / std::log(10.0);
    Real::ScopedDigits bump(static_cast<unsigned>(target_digits + lost + 10));

    const Real pi = Real::pi();
    const Real tol = pow(Real(10), -static_cast<long>(target_digits + 2));
    long N = 64;
    while (N < 4 * n) N *= 2;
    Real prev(0);
    bool have_prev = false;
    for (; N <= (1L << 22); N *= 2) {
        Real sum(0);
        const Real step = 2 * pi / Real(N);
        for (long j = 0; j < N; ++j) {
            Real theta = -pi + Real(j) * step;
            sum += exp(cos(theta)) * cos(Real(n) * theta);
        }
        Real t = sum / Real(N);
        if (have_prev && abs(t - prev) <= tol * abs(t)) return t;
        prev = t;
        have_prev = true;
    }
    throw truncation_error("bessel_i_quadrature: no convergence");
}

BesselBounds bessel_bounds(long n, const Real& lambda) {
    if (lambda.sign() <= 0) throw domain_error("bessel_bounds: lambda must be positive");
    if (n < 0) n = -n;
    // k = 0 term of I_n(2 sqrt(lambda)) = lambda^{n/2} sum_k lambda^k/(k!(n+k)!)
    Real llog = Real(n) / 2 * log(lambda) - lgamma_pos(Real(n + 1));
    BesselBounds b;
    b.lower = LogReal::from_log(1, llog);
    if (n == 0) {
        b.upper = LogReal::from_log(1, lambda);   // I_0(2 sqrt(lambda)) <= e^lambda
    } else {
        b.upper = LogReal::from_log(1, llog + log(expm1(lambda) / lambda));
    }
    return b;
}

Real skellam_pmf(long n, const Real& lambda, const Real& mu) {
    if (lambda.sign() <= 0 || mu.sign() <= 0)
        throw domain_error("skellam_pmf: rates must be positive");
    const long an = n < 0 ? -n : n;
    LogReal In = bessel_i(an, 2 * sqrt(lambda * mu));
    Real lpmf = -(lambda + mu) + Real(n) / 2 * (log(lambda) - log(mu)) + In.log_mag();
    return exp(lpmf);
}

} // namespace sbell::special
