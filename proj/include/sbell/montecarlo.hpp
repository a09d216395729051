#ifndef SBELL_MONTECARLO_HPP
#define SBELL_MONTECARLO_HPP

#include <cstdint>
#include <string>

#include "sbell/real.hpp"

namespace sbell::mc {

/// xoshiro256++ seeded through SplitMix64.  Parallel streams: stream k of a
/// base seed is the generator state advanced by k long-jumps (2^192 steps),
/// so streams never overlap; the same (seed, stream) pair always reproduces
/// the same draw sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    static Rng stream(std::uint64_t seed, unsigned k);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();
    void long_jump();

private:
    std::uint64_t s_[4];
};

/// Exact Poisson draw: CDF inversion for lambda <= 30, transformed rejection
/// (PTRS) above.
long sample_poisson(Rng& rng, double lambda);

struct MCConfig {
    long samples = 1'000'000;   // >= 10^4
    std::uint64_t seed = 42;
    double lambda = 0.5;
    double mu = 0.5;
    double p = 4.0;
};

struct MomentEstimate {
    double mean = 0;
    double stderr_ = 0;   // sample sd / sqrt(samples)
    long samples = 0;

    std::string serialize() const;
};

/// Monte-Carlo estimate of E|xi - eta|^p, xi ~ Poisson(lambda), eta ~ Poisson(mu).
MomentEstimate empirical_abs_moment(const MCConfig& cfg);

struct RosenthalFamily {
    enum Kind { two_point, sym_poisson, uniform } kind = sym_poisson;
    double param = 0.25;   // +-param / Poisson rate / half-width; must be > 0
};

struct RosenthalReport {
    long n = 0;
    long samples = 0;
    double p = 4;
    double numerator = 0;     // empirical ||sum xi_i||_p
    double denominator = 0;   // max(||sum||_2, (sum ||xi_i||_p^p)^{1/p}), exact
    double ratio = 0;
    double s_p = 0;           // S(p) from the series route
    double slack = 0;         // 4-sigma relative band on the p-norm estimate
    bool holds = false;       // ratio <= s_p (1 + slack)

    std::string serialize() const;
};

/// Empirical check of the symmetric-case moment inequality for n iid copies
/// of the given symmetric family.
RosenthalReport rosenthal_check(int n, const RosenthalFamily& family, double p,
                                const MCConfig& cfg);

} // namespace sbell::mc

#endif
