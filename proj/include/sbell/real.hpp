#ifndef SBELL_REAL_HPP
#define SBELL_REAL_HPP

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "sbell/errors.hpp"

namespace sbell {

/// Extended-precision real backed by MPFR.  Every freshly constructed value
/// uses the current global precision (default 38 decimal digits); copies keep
/// the precision of their source, so results computed under a temporarily
/// raised precision survive the scope that produced them.
class Real {
public:
    Real() { mpfr_init2(v_, default_bits()); mpfr_set_zero(v_, 1); }
    Real(double x) { mpfr_init2(v_, default_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(int x) { mpfr_init2(v_, default_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(unsigned x) { mpfr_init2(v_, default_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
    Real(long x) { mpfr_init2(v_, default_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(unsigned long x) { mpfr_init2(v_, default_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
    explicit Real(const std::string& s) {
        mpfr_init2(v_, default_bits());
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw domain_error("Real: cannot parse '" + s + "'");
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    // --- global precision -------------------------------------------------
    static unsigned default_digits();
    static void set_default_digits(unsigned digits);   // >= 30 enforced
    static mpfr_prec_t default_bits();

    /// RAII bump of the working precision (used e.g. by the oscillatory
    /// Bessel quadrature, which needs precision proportional to the
    /// cancellation it resolves).
    class ScopedDigits {
    public:
        explicit ScopedDigits(unsigned digits) : saved_(default_digits()) {
            set_default_digits(digits);
        }
        ~ScopedDigits() { set_default_digits(saved_); }
        ScopedDigits(const ScopedDigits&) = delete;
        ScopedDigits& operator=(const ScopedDigits&) = delete;
    private:
        unsigned saved_;
    };

    // --- access ------------------------------------------------------------
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    std::string str(int digits = -1) const;

    // --- arithmetic ----------------------------------------------------------
#define SBELL_REAL_BINOP(op, fn)                                          \
    friend Real operator op(const Real& a, const Real& b) {              \
        Real r = make();                                                  \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                  \
        return r;                                                         \
    }
    SBELL_REAL_BINOP(+, mpfr_add)
    SBELL_REAL_BINOP(-, mpfr_sub)
    SBELL_REAL_BINOP(*, mpfr_mul)
    SBELL_REAL_BINOP(/, mpfr_div)
#undef SBELL_REAL_BINOP

    Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend Real operator-(const Real& a) {
        Real r = make();
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    // --- elementary functions ----------------------------------------------
#define SBELL_REAL_UNARY(name, fn)                                       \
    friend Real name(const Real& a) {                                    \
        Real r = make();                                                  \
        fn(r.v_, a.v_, MPFR_RNDN);                                        \
        return r;                                                         \
    }
    SBELL_REAL_UNARY(exp, mpfr_exp)
    SBELL_REAL_UNARY(expm1, mpfr_expm1)
    SBELL_REAL_UNARY(log1p, mpfr_log1p)
    SBELL_REAL_UNARY(sqrt, mpfr_sqrt)
    SBELL_REAL_UNARY(abs, mpfr_abs)
    SBELL_REAL_UNARY(cos, mpfr_cos)
    SBELL_REAL_UNARY(erf, mpfr_erf)
#undef SBELL_REAL_UNARY

    friend Real floor(const Real& a) {
        Real r = make();
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend Real ceil(const Real& a) {
        Real r = make();
        mpfr_ceil(r.v_, a.v_);
        return r;
    }

    friend Real log(const Real& a) {
        if (a.sign() < 0) throw domain_error("log: negative argument");
        Real r = make();
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    /// ln Gamma(x) for x > 0.
    friend Real lgamma_pos(const Real& a) {
        if (a.sign() <= 0) throw domain_error("lgamma: argument must be positive");
        Real r = make();
        int s = 0;
        mpfr_lgamma(r.v_, &s, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real digamma(const Real& a) {
        Real r = make();
        mpfr_digamma(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r = make();
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, long b) {
        Real r = make();
        mpfr_pow_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }
    friend Real max(const Real& a, const Real& b) { return a > b ? a : b; }

    static Real pi() {
        Real r = make();
        mpfr_const_pi(r.raw(), MPFR_RNDN);
        return r;
    }
    static Real euler_e() { return exp(Real(1)); }
    static Real ln2() {
        Real r = make();
        mpfr_const_log2(r.raw(), MPFR_RNDN);
        return r;
    }
    static Real pos_inf() {
        Real r = make();
        mpfr_set_inf(r.raw(), 1);
        return r;
    }
    static Real neg_inf() {
        Real r = make();
        mpfr_set_inf(r.raw(), -1);
        return r;
    }

private:
    static Real make() { return Real(); }
    mpfr_t v_;
};

inline Real operator+(const Real& a, long b) { return a + Real(b); }
inline Real operator+(long a, const Real& b) { return Real(a) + b; }
inline Real operator-(const Real& a, long b) { return a - Real(b); }
inline Real operator-(long a, const Real& b) { return Real(a) - b; }
inline Real operator*(const Real& a, long b) { return a * Real(b); }
inline Real operator*(long a, const Real& b) { return Real(a) * b; }
inline Real operator/(const Real& a, long b) { return a / Real(b); }
inline Real operator/(long a, const Real& b) { return Real(a) / b; }

/// Signed log-magnitude number: carrier for series terms like n^p/n! that
/// overflow fixed-width exponents long before the sums they feed converge.
/// sign == 0 means exactly zero (log magnitude ignored).
class LogReal {
public:
    LogReal() : sign_(0), lg_(0) {}

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return from_log(1, Real(0)); }
    static LogReal from_log(int sign, Real log_magnitude) {
        LogReal x;
        x.sign_ = sign < 0 ? -1 : (sign > 0 ? 1 : 0);
        if (x.sign_ != 0) x.lg_ = std::move(log_magnitude);
        return x;
    }
    static LogReal from_real(const Real& v) {
        if (v.is_zero()) return zero();
        Real mag = v.sign() < 0 ? -v : v;   // member abs() shadows sbell::abs(Real)
        return from_log(v.sign(), log(mag));
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    /// Natural log of |x|; requires x != 0.
    const Real& log_mag() const {
        if (sign_ == 0) throw domain_error("LogReal::log_mag of zero");
        return lg_;
    }
    Real to_real() const {
        if (sign_ == 0) return Real(0);
        Real m = exp(lg_);
        return sign_ > 0 ? m : -m;
    }
    Real log10() const { return log_mag() / log(Real(10)); }

    LogReal abs() const { return sign_ == 0 ? zero() : from_log(1, lg_); }
    LogReal neg() const { return sign_ == 0 ? zero() : from_log(-sign_, lg_); }

    friend LogReal operator*(const LogReal& a, const LogReal& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return zero();
        return from_log(a.sign_ * b.sign_, a.lg_ + b.lg_);
    }
    friend LogReal operator/(const LogReal& a, const LogReal& b) {
        if (b.sign_ == 0) throw domain_error("LogReal: division by zero");
        if (a.sign_ == 0) return zero();
        return from_log(a.sign_ * b.sign_, a.lg_ - b.lg_);
    }
    /// |x|^e for x > 0.
    LogReal pow_real(const Real& e) const {
        if (sign_ == 0) return zero();
        if (sign_ < 0) throw domain_error("LogReal::pow_real of negative value");
        return from_log(1, lg_ * e);
    }

    /// log-sum-exp addition, handling mixed signs (cancellation yields exact
    /// zero when the magnitudes agree to working precision).
    friend LogReal operator+(const LogReal& a, const LogReal& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        const LogReal* big = &a;
        const LogReal* small = &b;
        if (b.lg_ > a.lg_) { big = &b; small = &a; }
        Real d = small->lg_ - big->lg_;   // <= 0
        if (a.sign_ == b.sign_)
            return from_log(a.sign_, big->lg_ + log1p(exp(d)));
        Real m = expm1(d);                 // in (-1, 0]
        if (m.is_zero() || small->lg_ == big->lg_) return zero();
        return from_log(big->sign_, big->lg_ + log(-m));
    }
    LogReal& operator+=(const LogReal& b) { *this = *this + b; return *this; }
    friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + b.neg(); }

    /// Magnitude comparison |a| < |b|.
    friend bool mag_less(const LogReal& a, const LogReal& b) {
        if (b.sign_ == 0) return false;
        if (a.sign_ == 0) return true;
        return a.lg_ < b.lg_;
    }
    friend bool operator<(const LogReal& a, const LogReal& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        if (a.sign_ == 0) return false;
        return a.sign_ > 0 ? a.lg_ < b.lg_ : b.lg_ < a.lg_;
    }
    friend bool operator<=(const LogReal& a, const LogReal& b) { return !(b < a); }

    std::string str(int digits = -1) const;

private:
    int sign_;
    Real lg_;
};

} // namespace sbell

#endif
