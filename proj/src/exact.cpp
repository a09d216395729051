#include "sbell/exact.hpp"

#include <mutex>
#include <shared_mutex>

#include "sbell/errors.hpp"

namespace sbell::exact {

Real to_real(const Int& z) {
    Real r;
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real to_real(const Rat& q) {
    Real r;
    mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

namespace {

class StirlingTable {
public:
    const Int& get(unsigned n, unsigned r) {
        {
            std::shared_lock lock(mu_);
            if (n < rows_.size()) return rows_[n][r];
        }
        grow(n);
        std::shared_lock lock(mu_);
        return rows_[n][r];
    }

    void grow(unsigned n) {
        std::unique_lock lock(mu_);
        if (rows_.empty()) rows_.push_back({Int(1)});   // s(0,0) = 1
        while (rows_.size() <= n) {
            unsigned m = static_cast<unsigned>(rows_.size());
            std::vector<Int> row(m + 1);
            row[0] = 0;
            for (unsigned r = 1; r < m; ++r)
                row[r] = Int(r) * rows_[m - 1][r] + rows_[m - 1][r - 1];
            row[m] = 1;
            rows_.push_back(std::move(row));
        }
    }

private:
    std::shared_mutex mu_;
    std::vector<std::vector<Int>> rows_;
};

StirlingTable& table() {
    static StirlingTable t;
    return t;
}

void require_even_positive(unsigned p, const char* who) {
    if (p < 2 || p % 2 != 0)
        throw domain_error(std::string(who) + ": p must be an even integer >= 2");
}

} // namespace

const Int& stirling2(unsigned n, unsigned r) {
    if (r > n) throw domain_error("stirling2: requires r <= n");
    return table().get(n, r);
}

void stirling2_reserve(unsigned n) { table().grow(n); }

Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rat poisson_raw_moment(unsigned k, const Rat& lambda) {
    if (lambda <= 0) throw domain_error("poisson_raw_moment: lambda must be positive");
    Rat acc = 0, lp = 1;
    for (unsigned l = 0; l <= k; ++l) {
        acc += Rat(stirling2(k, l)) * lp;
        lp *= lambda;
    }
    return acc;
}

Int L_exact(unsigned p) {
    require_even_positive(p, "L_exact");
    Int acc = 0;
    for (unsigned l = 0; l <= p; ++l) {
        Int inner = 0;
        for (unsigned r = 0; r <= p - l; ++r) inner += stirling2(p - l, r);
        Int term = binomial(p, l) * inner;
        if (l % 2) acc -= term; else acc += term;
    }
    return acc;
}

Int K_exact(unsigned p) {
    require_even_positive(p, "K_exact");
    Rat acc = 0;
    const Rat half(1, 2);
    for (unsigned l = 0; l <= p; ++l) {
        Rat inner = 0;
        Rat hq = 1;
        for (unsigned q = 0; q <= p - l; ++q) {
            Rat hr = 1;
            for (unsigned r = 0; r <= l; ++r) {
                inner += hq * hr * Rat(stirling2(p - l, q) * stirling2(l, r));
                hr *= half;
            }
            hq *= half;
        }
        Rat term = Rat(binomial(p, l)) * inner;
        if (l % 2) acc -= term; else acc += term;
    }
    acc.canonicalize();
    if (acc.get_den() != 1)
        throw internal_error("K_exact: result is not an integer");
    return acc.get_num();
}

Rat R_exact(unsigned p, const Rat& t) {
    require_even_positive(p, "R_exact");
    if (t <= 0 || t > Rat(1, 2)) throw domain_error("R_exact: t must lie in (0, 1/2]");
    Rat acc = 0;
    for (unsigned l = 0; l <= p; ++l) {
        Rat inner = 0;
        Rat tq = 1;
        for (unsigned q = 0; q <= p - l; ++q) {
            Rat tr = 1;
            for (unsigned r = 0; r <= l; ++r) {
                inner += tq * tr * Rat(stirling2(p - l, q) * stirling2(l, r));
                tr *= t;
            }
            tq *= t;
        }
        Rat term = Rat(binomial(p, l)) * inner;
        if (l % 2) acc -= term; else acc += term;
    }
    acc.canonicalize();
    return acc;
}

Rat D3_exact(unsigned p, const Rat& a, const Rat& lambda) {
    if (lambda <= 0) throw domain_error("D3_exact: lambda must be positive");
    // E(xi-a)^p = sum_l C(p,l) (-a)^{p-l} E xi^l
    Rat acc = 0;
    for (unsigned l = 0; l <= p; ++l) {
        Rat pw = 1;
        const Rat na = -a;
        for (unsigned j = 0; j < p - l; ++j) pw *= na;
        acc += Rat(binomial(p, l)) * pw * poisson_raw_moment(l, lambda);
    }
    acc.canonicalize();
    return acc;
}

Rat H_exact(unsigned p, const Rat& lambda, const Rat& mu) {
    if (lambda <= 0 || mu <= 0) throw domain_error("H_exact: rates must be positive");
    // E(xi-eta)^p = sum_r C(p,r) E xi^r (-1)^{p-r} E eta^{p-r}
    Rat acc = 0;
    for (unsigned r = 0; r <= p; ++r) {
        Rat term = Rat(binomial(p, r)) * poisson_raw_moment(r, lambda) *
                   poisson_raw_moment(p - r, mu);
        if ((p - r) % 2) acc -= term; else acc += term;
    }
    acc.canonicalize();
    return acc;
}

// ---- IntPolynomial ---------------------------------------------------------

void IntPolynomial::trim() {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
}

const Int& IntPolynomial::coeff(unsigned k) const {
    static const Int zero(0);
    return k < c_.size() ? c_[k] : zero;
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return IntPolynomial({Int(0)});
    std::vector<Int> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = Int(static_cast<long>(k)) * c_[k];
    return IntPolynomial(std::move(d));
}

Rat IntPolynomial::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + Rat(c_.empty() ? Int(0) : c_[k]);
    return acc;
}

Int IntPolynomial::eval_int(const Int& x) const {
    Int acc = 0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] += a.c_[k];
        if (k < b.c_.size()) c[k] += b.c_[k];
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] += a.c_[k];
        if (k < b.c_.size()) c[k] -= b.c_[k];
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return IntPolynomial({Int(0)});
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial P_polynomial(unsigned m) {
    IntPolynomial P = IntPolynomial::constant(1);
    const IntPolynomial one = IntPolynomial::constant(1);
    const IntPolynomial x({Int(0), Int(1)});
    const IntPolynomial one_minus_x2 = one - x * x;
    for (unsigned k = 0; k < m; ++k) {
        IntPolynomial d1 = P.derivative();
        IntPolynomial d2 = d1.derivative();
        P = one_minus_x2 * (d2 + d1 + d1 + P) - x * (d1 + P);
    }
    return P;
}

Rat BivariatePolynomial::eval(const Rat& lambda, const Rat& mu) const {
    Rat acc = 0, lp = 1;
    for (unsigned i = 0; i <= d_; ++i) {
        Rat mp = 1;
        for (unsigned j = 0; j <= d_; ++j) {
            if (at(i, j) != 0) acc += at(i, j) * lp * mp;
            mp *= mu;
        }
        lp *= lambda;
    }
    return acc;
}

BivariatePolynomial Q_polynomial(unsigned m) {
    if (m < 1) throw domain_error("Q_polynomial: m must be >= 1");
    const unsigned p = 2 * m;
    BivariatePolynomial Q(p);
    for (unsigned r = 0; r <= p; ++r) {
        const Int binom = binomial(p, r);
        for (unsigned i = 0; i <= r; ++i) {
            const Int& sri = stirling2(r, i);
            if (sri == 0) continue;
            for (unsigned j = 0; j <= p - r; ++j) {
                const Int& srj = stirling2(p - r, j);
                if (srj == 0) continue;
                Rat term(binom * sri * srj);
                if (r % 2) term = -term;
                Q.at(i, j) += term;
            }
        }
    }
    return Q;
}

} // namespace sbell::exact
