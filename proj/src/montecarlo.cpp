#include "sbell/montecarlo.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "sbell/errors.hpp"
#include "sbell/series.hpp"

namespace sbell::mc {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
}

Rng Rng::stream(std::uint64_t seed, unsigned k) {
    Rng r(seed);
    for (unsigned i = 0; i < k; ++i) r.long_jump();
    return r;
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void Rng::long_jump() {
    static constexpr std::uint64_t kJump[] = {0x76e15d3efefdcbbfULL, 0xc5004e441c522fb3ULL,
                                              0x77710069854ee241ULL, 0x39109bb02acbe635ULL};
    std::uint64_t t[4] = {0, 0, 0, 0};
    for (std::uint64_t jump : kJump)
        for (int b = 0; b < 64; ++b) {
            if (jump & (1ULL << b))
                for (int w = 0; w < 4; ++w) t[w] ^= s_[w];
            next();
        }
    for (int w = 0; w < 4; ++w) s_[w] = t[w];
}

long sample_poisson(Rng& rng, double lambda) {
    if (!(lambda > 0)) throw domain_error("sample_poisson: lambda must be positive");
    if (lambda <= 30.0) {
        // CDF inversion via the pmf recurrence
        double u = rng.uniform01();
        double pmf = std::exp(-lambda);
        double cdf = pmf;
        long k = 0;
        while (u > cdf && k < 3000) {
            ++k;
            pmf *= lambda / static_cast<double>(k);
            cdf += pmf;
        }
        return k;
    }
    // Hoermann's PTRS transformed rejection
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    for (;;) {
        double U = rng.uniform01() - 0.5;
        double V = rng.uniform01();
        double us = 0.5 - std::fabs(U);
        long k = static_cast<long>(std::floor((2.0 * a / us + b) * U + lambda + 0.43));
        if (us >= 0.07 && V <= v_r) return k;
        if (k < 0 || (us < 0.013 && V > us)) continue;
        if (std::log(V * inv_alpha / (a / (us * us) + b)) <=
            k * log_lambda - lambda - std::lgamma(static_cast<double>(k) + 1.0))
            return k;
    }
}

namespace {

void validate(const MCConfig& cfg) {
    if (cfg.samples < 10'000) throw domain_error("MCConfig: samples must be >= 10^4");
    if (!(cfg.lambda > 0) || !(cfg.mu > 0)) throw domain_error("MCConfig: rates must be positive");
    if (!(cfg.p >= 2)) throw domain_error("MCConfig: p must be >= 2");
}

struct Welford {
    double mean = 0, m2 = 0;
    long n = 0;
    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double stderr_() const {
        return n > 1 ? std::sqrt(m2 / (static_cast<double>(n) - 1) / static_cast<double>(n)) : 0;
    }
};

} // namespace

MomentEstimate empirical_abs_moment(const MCConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    Welford w;
    for (long i = 0; i < cfg.samples; ++i) {
        long d = sample_poisson(rng, cfg.lambda) - sample_poisson(rng, cfg.mu);
        double ad = static_cast<double>(d < 0 ? -d : d);
        w.add(ad == 0.0 ? 0.0 : std::pow(ad, cfg.p));
    }
    MomentEstimate est;
    est.mean = w.mean;
    est.stderr_ = w.stderr_();
    est.samples = w.n;
    return est;
}

std::string MomentEstimate::serialize() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean=%.17g stderr=%.17g samples=%ld", mean, stderr_, samples);
    return buf;
}

RosenthalReport rosenthal_check(int n, const RosenthalFamily& family, double p,
                                const MCConfig& cfg) {
    if (n < 1) throw domain_error("rosenthal_check: n must be >= 1");
    if (!(family.param > 0))
        throw domain_error("rosenthal_check: degenerate (almost surely zero) summands");
    if (!(p >= 4)) throw domain_error("rosenthal_check: p must be >= 4");
    if (cfg.samples < 10'000) throw domain_error("MCConfig: samples must be >= 10^4");

    const double c = family.param;
    double var_one = 0, lp_p_one = 0;
    switch (family.kind) {
        case RosenthalFamily::two_point:
            var_one = c * c;
            lp_p_one = std::pow(c, p);
            break;
        case RosenthalFamily::sym_poisson: {
            var_one = 2 * c;
            // E|tau1 - tau2|^p = e^{-2c} F3(p; 1, 2c)
            auto f3 = series::eval_F3(Real(p), Real(1), Real(2 * c));
            lp_p_one = exp(f3.value.log_mag() - 2 * Real(c)).to_double();
            break;
        }
        case RosenthalFamily::uniform:
            var_one = c * c / 3.0;
            lp_p_one = std::pow(c, p) / (p + 1.0);
            break;
    }

    Rng rng(cfg.seed);
    Welford w;
    for (long i = 0; i < cfg.samples; ++i) {
        double sum = 0;
        for (int j = 0; j < n; ++j) {
            switch (family.kind) {
                case RosenthalFamily::two_point:
                    sum += rng.uniform01() < 0.5 ? c : -c;
                    break;
                case RosenthalFamily::sym_poisson:
                    sum += static_cast<double>(sample_poisson(rng, c) - sample_poisson(rng, c));
                    break;
                case RosenthalFamily::uniform:
                    sum += (2.0 * rng.uniform01() - 1.0) * c;
                    break;
            }
        }
        double as = std::fabs(sum);
        w.add(as == 0.0 ? 0.0 : std::pow(as, p));
    }

    RosenthalReport rep;
    rep.n = n;
    rep.samples = w.n;
    rep.p = p;
    rep.numerator = std::pow(w.mean, 1.0 / p);
    rep.denominator = std::max(std::sqrt(n * var_one), std::pow(n * lp_p_one, 1.0 / p));
    rep.ratio = rep.numerator / rep.denominator;
    rep.s_p = series::S_of_p(Real(p)).to_double();
    rep.slack = 4.0 * w.stderr_() / (p * w.mean);
    rep.holds = rep.ratio <= rep.s_p * (1.0 + rep.slack) * (1.0 + 1e-12);
    return rep;
}

std::string RosenthalReport::serialize() const {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "n=%ld samples=%ld p=%.17g numerator=%.17g denominator=%.17g ratio=%.17g "
                  "s_p=%.17g slack=%.17g holds=%d",
                  n, samples, p, numerator, denominator, ratio, s_p, slack, holds ? 1 : 0);
    return buf;
}

} // namespace sbell::mc
