#ifndef SBELL_EXACT_HPP
#define SBELL_EXACT_HPP

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "sbell/real.hpp"

namespace sbell::exact {

using Int = mpz_class;       // unbounded-magnitude integer
using Rat = mpq_class;       // exact rational, canonical form

Real to_real(const Int& z);
Real to_real(const Rat& q);

/// Stirling numbers of the second kind, s(n,r) in the convention
/// x^n = sum_r s(n,r) x_(r).  Memoized triangular table, grown on demand;
/// concurrent readers are safe, growth takes an exclusive lock.
const Int& stirling2(unsigned n, unsigned r);

/// Pre-grow the memo table (call before parallel use if growth under
/// contention is a concern).
void stirling2_reserve(unsigned n);

Int binomial(unsigned n, unsigned k);

/// E xi^k for xi ~ Poisson(lambda), as sum_l s(k,l) lambda^l (Touchard).
Rat poisson_raw_moment(unsigned k, const Rat& lambda);

/// L(2m) = E(theta-1)^{2m}, theta ~ Poisson(1); always an integer.
Int L_exact(unsigned p);

/// K(2m) = E(tau1-tau2)^{2m}, tau_i ~ Poisson(1/2) iid.  Computed as an
/// exact rational and asserted integral (internal_error otherwise).
Int K_exact(unsigned p);

/// 2m-th moment of the difference of two independent Poisson(t) variables,
/// 0 < t <= 1/2.
Rat R_exact(unsigned p, const Rat& t);

/// E(xi-a)^p for xi ~ Poisson(lambda).
Rat D3_exact(unsigned p, const Rat& a, const Rat& lambda);

/// E(xi-eta)^p for xi ~ Poisson(lambda), eta ~ Poisson(mu), via the binomial
/// expansion over raw Poisson moments.
Rat H_exact(unsigned p, const Rat& lambda, const Rat& mu);

/// Dense integer-coefficient univariate polynomial (coefficients by degree).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(long v) { return IntPolynomial({Int(v)}); }

    unsigned degree() const { return c_.empty() ? 0 : static_cast<unsigned>(c_.size() - 1); }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(unsigned k) const;

    IntPolynomial derivative() const;
    Rat eval(const Rat& x) const;
    Int eval_int(const Int& x) const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

private:
    void trim();
    std::vector<Int> c_;   // c_[k] * x^k
};

/// P_{2m}: integer polynomials with (exp cos t)^{(2m)} = exp(cos t) P_{2m}(cos t),
/// built by the second-order recursion from P_0 = 1.
IntPolynomial P_polynomial(unsigned m);

/// Bivariate polynomial over lambda^i mu^j with rational coefficients.
class BivariatePolynomial {
public:
    explicit BivariatePolynomial(unsigned degree)
        : d_(degree), c_((degree + 1) * (degree + 1)) {}

    unsigned degree() const { return d_; }
    Rat& at(unsigned i, unsigned j) { return c_[i * (d_ + 1) + j]; }
    const Rat& at(unsigned i, unsigned j) const { return c_[i * (d_ + 1) + j]; }
    Rat eval(const Rat& lambda, const Rat& mu) const;

private:
    unsigned d_;
    std::vector<Rat> c_;
};

/// Q_{2m}(lambda, mu) = E(xi-eta)^{2m}, as a coefficient grid of total
/// degree 2m.
BivariatePolynomial Q_polynomial(unsigned m);

} // namespace sbell::exact

#endif
