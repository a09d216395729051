#include "sbell/real.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sbell {

namespace {

constexpr unsigned kMinDigits = 30;
constexpr unsigned kDefaultDigits = 38;

std::atomic<unsigned>& digits_slot() {
    static std::atomic<unsigned> d{[] {
        if (const char* env = std::getenv("RC_PRECISION")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= static_cast<long>(kMinDigits)) return static_cast<unsigned>(v);
        }
        return kDefaultDigits;
    }()};
    return d;
}

} // namespace

unsigned Real::default_digits() { return digits_slot().load(std::memory_order_relaxed); }

void Real::set_default_digits(unsigned digits) {
    if (digits < kMinDigits) digits = kMinDigits;
    digits_slot().store(digits, std::memory_order_relaxed);
}

mpfr_prec_t Real::default_bits() {
    // digits * log2(10), with headroom for intermediate rounding
    return static_cast<mpfr_prec_t>(default_digits() * 3.3219280948873623 + 12);
}

std::string Real::str(int digits) const {
    if (digits <= 0) digits = static_cast<int>(default_digits());
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    // trim trailing zeros but keep at least one digit
    size_t last = d.find_last_not_of('0');
    d.erase(last + 1);
    if (d.empty()) d = "0";
    std::ostringstream out;
    if (neg) out << '-';
    long exp10 = static_cast<long>(e);   // value = 0.d1 d2... * 10^exp10
    if (exp10 > 0 && exp10 <= digits + 4 && static_cast<size_t>(exp10) >= d.size()) {
        out << d << std::string(exp10 - d.size(), '0');
    } else if (exp10 > 0 && exp10 <= digits + 4) {
        out << d.substr(0, exp10) << '.' << d.substr(exp10);
    } else if (exp10 <= 0 && exp10 > -4) {
        out << "0." << std::string(-exp10, '0') << d;
    } else {
        out << d.substr(0, 1);
        if (d.size() > 1) out << '.' << d.substr(1);
        out << 'e' << (exp10 - 1);
    }
    return out.str();
}

std::string LogReal::str(int digits) const {
    if (sign_ == 0) return "0";
    // Render as value when the exponent fits comfortably, otherwise as
    // m.mmm...e+EEE assembled from the log magnitude.
    Real l10 = lg_ / log(Real(10));
    double l10d = l10.to_double();
    if (std::abs(l10d) < 300.0) return to_real().str(digits);
    Real fl = floor(l10);
    Real frac = l10 - fl;
    Real mant = pow(Real(10), frac);
    std::ostringstream out;
    if (sign_ < 0) out << '-';
    out << mant.str(digits) << 'e' << (long long)fl.to_double();
    return out.str();
}

} // namespace sbell
