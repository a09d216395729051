#include "sbell/series.hpp"

#include <cmath>
#include <memory>

#include "sbell/asymptotics.hpp"
#include "sbell/errors.hpp"
#include "sbell/special.hpp"

namespace sbell::series {

namespace {

long require_small_integer(const Real& p, const char* who) {
    double pd = p.to_double();
    long r = std::lround(pd);
    if (std::abs(pd - static_cast<double>(r)) > 1e-9)
        throw domain_error(std::string(who) + ": p must be an integer");
    return r;
}

/// ln I_k(beta) for ascending k, with incremental ln k! and a fast inner
/// correction loop once beta^2/4 is small against k.
class BesselSeq {
public:
    explicit BesselSeq(const Real& beta)
        : lhalf_(log(beta / 2)), x_(beta * beta / 4), xd_(x_.to_double()),
          lkfact_(0), k_(0) {}

    /// Must be called with k = 1, 2, ... in order.
    Real log_In(long k) {
        while (k_ < k) {
            ++k_;
            lkfact_ += log(Real(k_));
        }
        Real base = Real(k) * lhalf_ - lkfact_;
        // correction sum_j x^j / prod_{i<=j} i (k+i); only a handful of terms
        // once k passes the z^2/4 scale
        Real c(0), t(1);
        for (long j = 1; j < 100000; ++j) {
            t *= x_ / (Real(j) * Real(k + j));
            c += t;
            if (static_cast<double>(j * j) > xd_ && t < tol_ * (1 + c)) break;
        }
        return base + log1p(c);
    }

private:
    Real lhalf_, x_;
    double xd_;
    Real lkfact_, tol_{Real("1e-40")};
    long k_;
};

long saddle_hint(const Real& p, const Real& c) {
    if (p.to_double() <= 1.0) return 2;
    Real root = asym::solve_saddle(p, c).root;
    return static_cast<long>(root.to_double()) + 2;
}

} // namespace

EvalResult sum_series(const std::function<LogReal(long)>& term,
                      const TruncationPolicy& policy,
                      long first_index, long peak_hint, const char* what) {
    if (policy.rel_tol.sign() <= 0) throw domain_error("TruncationPolicy: rel_tol must be positive");
    if (policy.max_terms < 1000) throw domain_error("TruncationPolicy: max_terms must be >= 1000");

    Real shift(0);
    bool have_shift = false;
    Real acc(0);       // signed, value = exp(shift) * acc
    Real absacc(0);    // sum of |t|, same shift
    const Real ltol = log(policy.rel_tol);

    bool seen_pos = false, seen_neg = false;
    Real peak_mag(0);
    long peak_idx = first_index;
    bool have_peak = false;
    Real prev_mag(0);
    bool have_prev = false;
    int decreasing_run = 0;
    long n = first_index;

    for (long count = 0; count < policy.max_terms; ++count, ++n) {
        LogReal t = term(n);
        if (!t.is_zero()) {
            (t.sign() > 0 ? seen_pos : seen_neg) = true;
            const Real& lm = t.log_mag();
            if (!have_shift) {
                shift = lm;
                have_shift = true;
            } else if (lm > shift + Real(30)) {
                Real f = exp(shift - lm);
                acc *= f;
                absacc *= f;
                shift = lm;
            }
            Real lin = exp(lm - shift);
            acc += t.sign() > 0 ? lin : -lin;
            absacc += lin;

            if (!have_peak || lm > peak_mag) {
                peak_mag = lm;
                peak_idx = n;
                have_peak = true;
                decreasing_run = 0;
            } else if (have_prev && lm < prev_mag) {
                ++decreasing_run;
            } else {
                decreasing_run = 0;
            }

            long eligible_at = static_cast<long>(policy.peak_margin * static_cast<double>(
                                   std::max<long>(peak_idx, 1)));
            if (peak_hint >= 0 && eligible_at < peak_hint) eligible_at = peak_hint;
            if (decreasing_run >= 3 && n >= eligible_at && have_prev) {
                Real rho = exp(lm - prev_mag);   // < 1 on a decreasing run
                if (rho < Real("0.999")) {
                    Real ltail = lm + log(rho) - log1p(-rho);
                    Real lscale = shift + log(absacc);
                    if (ltail <= ltol + lscale && lm <= ltol + lscale) {
                        EvalResult r;
                        r.value = acc.is_zero() ? LogReal::zero()
                                                : LogReal::from_log(acc.sign(), shift + log(abs(acc)));
                        r.terms_used = count + 1;
                        r.peak_index = peak_idx;
                        r.tail_bound = LogReal::from_log(1, ltail);
                        r.mixed_signs = seen_pos && seen_neg;
                        return r;
                    }
                }
            }
            prev_mag = lm;
            have_prev = true;
        } else if ((have_prev && decreasing_run >= 3 && n >= peak_hint &&
                    n >= first_index + 4) ||
                   (!have_shift && n >= peak_hint && count >= 8)) {
            // exact zero past the decay (or an identically vanishing series,
            // e.g. the odd fold at theta = 1): nothing left to sum
            EvalResult r;
            r.value = (!have_shift || acc.is_zero())
                          ? LogReal::zero()
                          : LogReal::from_log(acc.sign(), shift + log(abs(acc)));
            r.terms_used = count + 1;
            r.peak_index = peak_idx;
            r.tail_bound = LogReal::zero();
            r.mixed_signs = seen_pos && seen_neg;
            return r;
        }
    }
    if (!have_prev || decreasing_run == 0)
        throw truncation_error(std::string(what) + ": terms still increasing after max_terms");
    throw truncation_error(std::string(what) + ": tolerance not reached within max_terms");
}

EvalResult eval_F3(const Real& p, const Real& theta, const Real& beta,
                   const TruncationPolicy& policy) {
    if (p.sign() < 0) throw domain_error("eval_F3: p must be >= 0");
    if (theta.sign() <= 0) throw domain_error("eval_F3: theta must be positive");
    if (beta.sign() < 0) throw domain_error("eval_F3: beta must be nonnegative");
    const bool p_zero = p.is_zero();
    if (beta.is_zero()) {
        // only I_0(0) = 1 survives, weighted by |0|^p
        EvalResult r;
        r.value = p_zero ? LogReal::one() : LogReal::zero();
        r.terms_used = 1;
        r.tail_bound = LogReal::zero();
        return r;
    }
    const Real ltheta = log(theta);
    const bool theta_one = ltheta.is_zero();
    const Real lln2 = log(Real(2));
    auto seq = std::make_shared<BesselSeq>(beta);
    auto term = [=](long k) -> LogReal {
        if (k == 0)
            return p_zero ? special::bessel_i(0L, beta) : LogReal::zero();
        Real w;   // ln(theta^k + theta^{-k})
        if (theta_one) {
            w = lln2;
        } else {
            Real a = Real(k) * ltheta;
            Real aa = abs(a);
            w = aa + log1p(exp(-2 * aa));
        }
        Real lt = (p_zero ? Real(0) : p * log(Real(k))) + w + seq->log_In(k);
        return LogReal::from_log(1, lt);
    };
    Real theta_hat = max(theta, 1 / theta);
    Real c = -log(theta_hat * beta / 2);
    return sum_series(term, policy, 0, saddle_hint(p, c), "F3");
}

EvalResult eval_G3(long p, const Real& theta, const Real& beta,
                   const TruncationPolicy& policy) {
    if (p < 1) throw domain_error("eval_G3: p must be a positive integer");
    if (theta.sign() <= 0) throw domain_error("eval_G3: theta must be positive");
    if (beta.sign() < 0) throw domain_error("eval_G3: beta must be nonnegative");
    if (p % 2 == 0) return eval_F3(Real(p), theta, beta, policy);
    if (beta.is_zero()) {
        EvalResult r;
        r.value = LogReal::zero();
        r.terms_used = 1;
        r.tail_bound = LogReal::zero();
        return r;
    }
    const Real ltheta = log(theta);
    auto seq = std::make_shared<BesselSeq>(beta);
    auto term = [=](long k) -> LogReal {
        // odd p: k^p (theta^k - theta^{-k}) I_k(beta)
        if (ltheta.is_zero()) return LogReal::zero();
        Real a = Real(k) * ltheta;
        Real aa = abs(a);
        Real w = aa + log1p(-exp(-2 * aa));
        Real lt = Real(p) * log(Real(k)) + w + seq->log_In(k);
        return LogReal::from_log(ltheta.sign(), lt);
    };
    Real theta_hat = max(theta, 1 / theta);
    Real c = -log(theta_hat * beta / 2);
    return sum_series(term, policy, 1, saddle_hint(Real(p), c), "G3");
}

EvalResult eval_B4(const Real& p, const Real& a, const Real& lambda, const Real& gamma,
                   const TruncationPolicy& policy) {
    if (p.sign() < 0) throw domain_error("eval_B4: p must be >= 0");
    if (lambda.sign() <= 0) throw domain_error("eval_B4: lambda must be positive");
    if (gamma.sign() < 0) throw domain_error("eval_B4: gamma must be >= 0");
    const bool p_zero = p.is_zero();
    const Real llam = log(lambda);
    // running ln Gamma(n + gamma + 1), advanced alongside n
    auto lgam = std::make_shared<Real>(lgamma_pos(gamma + 1));
    auto last_n = std::make_shared<long>(0);
    auto term = [=](long n) -> LogReal {
        while (*last_n < n) {
            ++*last_n;
            *lgam += log(gamma + *last_n);
        }
        Real w = abs(Real(n) - a);
        Real lt;
        if (w.is_zero()) {
            if (!p_zero) return LogReal::zero();
            lt = Real(n) * llam - lambda - *lgam;
        } else {
            lt = (p_zero ? Real(0) : p * log(w)) + Real(n) * llam - lambda - *lgam;
        }
        return LogReal::from_log(1, lt);
    };
    long hint = saddle_hint(p, -llam) + static_cast<long>(std::abs(a.to_double())) + 2;
    return sum_series(term, policy, 0, hint, "B4");
}

EvalResult eval_D4(long p, const Real& a, const Real& lambda, const Real& gamma,
                   const TruncationPolicy& policy) {
    if (p < 1) throw domain_error("eval_D4: p must be a positive integer");
    if (lambda.sign() <= 0) throw domain_error("eval_D4: lambda must be positive");
    if (gamma.sign() < 0) throw domain_error("eval_D4: gamma must be >= 0");
    const Real llam = log(lambda);
    const bool odd = (p % 2 != 0);
    auto lgam = std::make_shared<Real>(lgamma_pos(gamma + 1));
    auto last_n = std::make_shared<long>(0);
    auto term = [=](long n) -> LogReal {
        while (*last_n < n) {
            ++*last_n;
            *lgam += log(gamma + *last_n);
        }
        Real d = Real(n) - a;
        if (d.is_zero()) return LogReal::zero();
        int sign = (odd && d.sign() < 0) ? -1 : 1;
        Real lt = Real(p) * log(abs(d)) + Real(n) * llam - lambda - *lgam;
        return LogReal::from_log(sign, lt);
    };
    long hint = saddle_hint(Real(p), -llam) + static_cast<long>(std::abs(a.to_double())) + 2;
    return sum_series(term, policy, 0, hint, "D4");
}

namespace {

EvalResult scaled(EvalResult r, const LogReal& factor) {
    r.value = r.value * factor;
    r.tail_bound = r.tail_bound * factor;
    return r;
}

} // namespace

EvalResult K_series(const Real& p, const TruncationPolicy& policy) {
    if (p < Real(2)) throw domain_error("K_series: p must be >= 2");
    return scaled(eval_F3(p, Real(1), Real(1), policy), LogReal::from_log(1, Real(-1)));
}

EvalResult L_series(const Real& p, const TruncationPolicy& policy) {
    if (p < Real(2)) throw domain_error("L_series: p must be >= 2");
    return eval_B4(p, Real(1), Real(1), Real(0), policy);
}

EvalResult R_series(const Real& p, const Real& t, const TruncationPolicy& policy) {
    if (p < Real(2)) throw domain_error("R_series: p must be >= 2");
    if (t.sign() <= 0 || t > Real(0.5)) throw domain_error("R_series: t must lie in (0, 1/2]");
    return scaled(eval_F3(p, Real(1), 2 * t, policy), LogReal::from_log(1, -2 * t));
}

EvalResult B1_series(const Real& p, const TruncationPolicy& policy) {
    return eval_B4(p, Real(0), Real(1), Real(0), policy);
}

Real G_of_p(const Real& p, const TruncationPolicy& policy) {
    return exp(L_series(p, policy).value.log_mag() / p);
}

Real S_of_p(const Real& p, const TruncationPolicy& policy) {
    return exp(K_series(p, policy).value.log_mag() / p);
}

Real K_explicit_small_p(const Real& p) {
    if (p < Real(2) || p > Real(4))
        throw domain_error("K_explicit_small_p: p must lie in [2, 4]");
    return 1 + sqrt(pow(Real(2), p) / Real::pi()) * exp(lgamma_pos((p + 1) / 2));
}

Real S_explicit(const Real& p) {
    if (p == Real(2)) return Real(1);
    return pow(K_explicit_small_p(p), 1 / p);
}

DerivativeResult derivative_series(Which which, unsigned m, const Real& p,
                                   const TruncationPolicy& policy) {
    if (m < 1) throw domain_error("derivative_series: m must be >= 1");
    if (p < Real(2)) throw domain_error("derivative_series: p must be >= 2");
    DerivativeResult out;
    if (which == Which::L) {
        auto lnfact = std::make_shared<Real>(Real(0));
        auto last_n = std::make_shared<long>(0);
        auto term = [=](long n) -> LogReal {
            while (*last_n < n) {
                ++*last_n;
                *lnfact += log(Real(*last_n));
            }
            if (n < 3) return LogReal::zero();   // |n-1| in {0,1}: zero log weight
            Real lw = log(Real(n - 1));
            Real lt = p * lw + Real(static_cast<long>(m)) * log(lw) - *lnfact;
            return LogReal::from_log(1, lt);
        };
        long hint = saddle_hint(p, Real(0)) + 3;
        EvalResult r = sum_series(term, policy, 0, hint, "L_derivative");
        out.estimate = exp(r.value.log_mag() - 1);
    } else {
        auto seq = std::make_shared<BesselSeq>(Real(1));
        auto term = [=](long n) -> LogReal {
            if (n < 2) return LogReal::zero();
            Real lt = p * log(Real(n)) + Real(static_cast<long>(m)) * log(log(Real(n))) +
                      seq->log_In(n);
            return LogReal::from_log(1, lt);
        };
        long hint = saddle_hint(p, Real::ln2()) + 3;
        EvalResult r = sum_series(term, policy, 1, hint, "K_derivative");
        out.estimate = 2 * exp(r.value.log_mag() - 1);
    }
    // (m/e)^m (e B1(p) - 1) comparison; the K branch carries the extra e^{1/4}
    // from I_n(1) <= e^{1/4} 2^{-n}/n! and n 2^{1-n} <= 1.
    Real b1 = exp(B1_series(p, policy).value.log_mag());
    Real base = pow(Real(static_cast<long>(m)) / Real::euler_e(), static_cast<long>(m)) *
                (Real::euler_e() * b1 - 1);
    out.bound = (which == Which::L) ? base / Real::euler_e()
                                    : base * exp(Real(-0.75));
    if (out.estimate > out.bound)
        throw internal_error("derivative_series: estimate exceeds its comparison bound");
    return out;
}

SeriesSpec::Family SeriesSpec::parse_family(const std::string& name) {
    if (name == "F3") return Family::F3;
    if (name == "G3") return Family::G3;
    if (name == "B4") return Family::B4;
    if (name == "D4") return Family::D4;
    if (name == "K") return Family::K;
    if (name == "L") return Family::L;
    if (name == "R") return Family::R;
    if (name == "B1") return Family::B1;
    throw domain_error("unknown series family '" + name + "'");
}

EvalResult evaluate(const SeriesSpec& s, const TruncationPolicy& policy) {
    using F = SeriesSpec::Family;
    switch (s.family) {
        case F::F3: return eval_F3(s.p, s.theta, s.beta, policy);
        case F::G3: return eval_G3(require_small_integer(s.p, "G3"), s.theta, s.beta, policy);
        case F::B4: return eval_B4(s.p, s.a, s.lambda, s.gamma, policy);
        case F::D4: return eval_D4(require_small_integer(s.p, "D4"), s.a, s.lambda, s.gamma, policy);
        case F::K: return K_series(s.p, policy);
        case F::L: return L_series(s.p, policy);
        case F::R: return R_series(s.p, s.t, policy);
        case F::B1: return B1_series(s.p, policy);
    }
    throw domain_error("evaluate: unreachable family");
}

Real left_derivative_at_4() {
    const Real h("1e-4");
    const Real f0 = K_explicit_small_p(Real(4));
    const Real f1 = K_explicit_small_p(Real(4) - h);
    const Real f2 = K_explicit_small_p(Real(4) - 2 * h);
    const Real f3 = K_explicit_small_p(Real(4) - 3 * h);
    const Real f4 = K_explicit_small_p(Real(4) - 4 * h);
    return (25 * f0 - 48 * f1 + 36 * f2 - 16 * f3 + 3 * f4) / (12 * h);
}

} // namespace sbell::series
