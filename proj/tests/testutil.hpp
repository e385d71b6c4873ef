#ifndef QSCALE_TESTS_TESTUTIL_HPP
#define QSCALE_TESTS_TESTUTIL_HPP

#include <cstdint>
#include <vector>

#include "qscale/log_complex.hpp"
#include "qscale/real.hpp"

namespace qscale::test {

// Deterministic cross-platform generator (splitmix64); the random grids in
// the suites must reproduce bit-for-bit everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 bits, exact dyadic rational.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    long uniform_int(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// |a/b - 1| <= tol with sign agreement; b nonzero.
inline bool rel_close(const LogReal& a, const LogReal& b, const Real& tol) {
    if (b.is_zero())
        return a.is_zero();
    if (a.is_zero())
        return false;
    if (a.sign() != b.sign())
        return false;
    return abs(expm1(a.logmag() - b.logmag())) <= tol;
}

inline bool rel_close(const LogComplex& a, const LogComplex& b, const Real& tol) {
    if (b.is_zero())
        return a.is_zero();
    if (a.is_zero() || a.quarter() != b.quarter())
        return false;
    return abs(expm1(a.magnitude().logmag() - b.magnitude().logmag())) <= tol;
}

inline bool rel_close(const Real& a, const Real& b, const Real& tol) {
    if (b == 0)
        return a == 0;
    return abs(a / b - 1) <= tol;
}

// Exact-rational q-series oracles, independent of the log-domain evaluators:
// plain sums of the defining expressions over gmp rationals.
namespace oracle {

inline Rational qpoch_finite(const Rational& a, const Rational& q, long n) {
    Rational prod(1), aqk = a;
    for (long k = 0; k < n; ++k) {
        prod *= 1 - aqk;
        aqk *= q;
    }
    return prod;
}

inline Rational pow_rat(const Rational& base, long e) {
    Rational r(1);
    Rational b = e < 0 ? Rational(1) / base : base;
    for (long i = 0, m = e < 0 ? -e : e; i < m; ++i)
        r *= b;
    return r;
}

// S_n(x;q) = sum q^{k^2} (-x)^k / ((q;q)_k (q;q)_{n-k})
inline Rational stieltjes_wigert(long n, const Rational& x, const Rational& q) {
    Rational s(0);
    for (long k = 0; k <= n; ++k)
        s += pow_rat(q, k * k) * pow_rat(-x, k) /
             (qpoch_finite(q, q, k) * qpoch_finite(q, q, n - k));
    return s;
}

// L_n^{(alpha)}(x;q) for integer alpha >= 0.
inline Rational q_laguerre(long n, long alpha, const Rational& x, const Rational& q) {
    Rational qa = pow_rat(q, alpha + 1);
    Rational s(0);
    for (long k = 0; k <= n; ++k)
        s += pow_rat(q, k * k + alpha * k) * pow_rat(-x, k) * qpoch_finite(qa, q, n) /
             (qpoch_finite(q, q, k) * qpoch_finite(q, q, n - k) *
              qpoch_finite(qa, q, n - k));
    return s;
}

// h_n(sinh xi | q) for rational e^{xi}.
inline Rational ismail_masson(long n, const Rational& exp_xi, const Rational& q) {
    Rational s(0);
    for (long k = 0; k <= n; ++k) {
        Rational term = qpoch_finite(q, q, n) * pow_rat(q, k * (k - n)) *
                        pow_rat(exp_xi, n - 2 * k) /
                        (qpoch_finite(q, q, k) * qpoch_finite(q, q, n - k));
        s += (k % 2 == 0) ? term : -term;
    }
    return s;
}

} // namespace oracle

// Rational -> LogReal at working precision.
inline LogReal to_logreal(const Rational& r) {
    return LogReal::from_value(Real(r));
}

} // namespace qscale::test

#endif
