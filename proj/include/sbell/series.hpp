#ifndef SBELL_SERIES_HPP
#define SBELL_SERIES_HPP

#include <functional>
#include <string>

#include "sbell/real.hpp"

namespace sbell::series {

struct TruncationPolicy {
    Real rel_tol = Real("1e-30");     // relative to the sum of |terms|
    long max_terms = 10'000'000;
    double peak_margin = 3.0;         // tail tests wait until n >= margin * observed peak

    TruncationPolicy() = default;
    TruncationPolicy(Real tol, long mt, double margin)
        : rel_tol(std::move(tol)), max_terms(mt), peak_margin(margin) {}
};

struct EvalResult {
    LogReal value;
    long terms_used = 0;
    long peak_index = 0;
    LogReal tail_bound;
    bool mixed_signs = false;
};

/// Sums term(n) for n = first_index, first_index+1, ...  Terms are tracked in
/// shifted linear space (exact signed accumulation at working precision); the
/// tail test fires only past the term peak, and the reported tail bound is the
/// geometric majorant |t_n| r/(1-r) with r the last observed term ratio.
/// Throws truncation_error if the terms never start decaying within
/// max_terms, or never meet the tolerance.
EvalResult sum_series(const std::function<LogReal(long)>& term,
                      const TruncationPolicy& policy,
                      long first_index = 0,
                      long peak_hint = -1,
                      const char* what = "series");

// ---- Schloemilch family ----------------------------------------------------

/// F3(p; theta, beta) = sum_{k in Z} |k|^p theta^k I_k(beta), folded onto
/// k >= 0 via I_{-k} = I_k.  0^0 = 1, so p = 0 includes the I_0 term.
EvalResult eval_F3(const Real& p, const Real& theta, const Real& beta,
                   const TruncationPolicy& policy = {});

/// G3(p; theta, beta) = sum_{k in Z} k^p theta^k I_k(beta), integer p >= 1.
EvalResult eval_G3(long p, const Real& theta, const Real& beta,
                   const TruncationPolicy& policy = {});

// ---- Bell family -------------------------------------------------------------

/// B4(p; a, lambda, gamma) = sum_{n>=0} |n-a|^p lambda^n / (e^lambda Gamma(n+gamma+1)).
EvalResult eval_B4(const Real& p, const Real& a, const Real& lambda, const Real& gamma,
                   const TruncationPolicy& policy = {});

/// D4: signed variant of B4, integer p >= 1.
EvalResult eval_D4(long p, const Real& a, const Real& lambda, const Real& gamma,
                   const TruncationPolicy& policy = {});

// ---- headline functions ------------------------------------------------------

/// K(p) = (2/e) sum_{n>=1} n^p I_n(1): p-th absolute moment of the difference
/// of two independent Poisson(1/2) variables.
EvalResult K_series(const Real& p, const TruncationPolicy& policy = {});

/// L(p) = e^{-1} sum_n |n-1|^p / n!.
EvalResult L_series(const Real& p, const TruncationPolicy& policy = {});

/// R(p,t) = 2 e^{-2t} sum_{n>=1} n^p I_n(2t): same moment for Poisson(t) pairs.
EvalResult R_series(const Real& p, const Real& t, const TruncationPolicy& policy = {});

/// B1(p) = sum_n n^p/(e n!), the Bell-number interpolation.
EvalResult B1_series(const Real& p, const TruncationPolicy& policy = {});

Real G_of_p(const Real& p, const TruncationPolicy& policy = {});   // L(p)^{1/p}
Real S_of_p(const Real& p, const TruncationPolicy& policy = {});   // K(p)^{1/p}

/// Closed form for S(p) on [2,4]: (1 + sqrt(2^p/pi) Gamma((p+1)/2))^{1/p}.
Real S_explicit(const Real& p);
/// S_explicit(p)^p, the companion closed form for K on [2,4].
Real K_explicit_small_p(const Real& p);

enum class Which { K, L };

/// Parameter bundle for one family evaluation; only the fields a family
/// reads are consulted.
struct SeriesSpec {
    enum class Family { F3, G3, B4, D4, K, L, R, B1 } family = Family::K;
    Real p = Real(4);
    Real theta = Real(1);      // F3/G3
    Real beta = Real(1);       // F3/G3
    Real a = Real(0);          // B4/D4
    Real lambda = Real(1);     // B4/D4
    Real gamma = Real(0);      // B4/D4
    Real t = Real(0.5);        // R

    static Family parse_family(const std::string& name);
};

EvalResult evaluate(const SeriesSpec& spec, const TruncationPolicy& policy = {});

struct DerivativeResult {
    Real estimate;    // m-th derivative in p, term-wise log-weighted series
    Real bound;       // factorial-comparison upper bound; estimate <= bound asserted
};

/// d^m/dp^m of K(p) or L(p) at real p (right-sided branch, p >= 2).
DerivativeResult derivative_series(Which which, unsigned m, const Real& p,
                                   const TruncationPolicy& policy = {});

/// One-sided numerical derivative of K_explicit_small_p at p = 4^-.
Real left_derivative_at_4();

} // namespace sbell::series

#endif
