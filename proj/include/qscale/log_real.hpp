#ifndef QSCALE_LOG_REAL_HPP
#define QSCALE_LOG_REAL_HPP

#include <vector>

#include "qscale/real.hpp"

namespace qscale {

// A signed real held as sign and natural log of magnitude. Survives the
// exp(pi*lambda*(...)^2) dynamic range of the scaled asymptotics; multiply
// and divide act on the log, add and subtract go through a max-factored
// log1p/expm1 form and never overflow for |logmag| up to 1e9.
class LogReal {
public:
    // Exact zero.
    LogReal() : sign_(0), logmag_(0) {}

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return from_log(+1, Real(0)); }

    static LogReal from_log(int sign, Real logmag) {
        LogReal r;
        r.sign_ = (sign > 0) ? +1 : (sign < 0 ? -1 : 0);
        r.logmag_ = (r.sign_ == 0) ? Real(0) : std::move(logmag);
        return r;
    }

    // exp(logmag), always positive.
    static LogReal exp_of(Real logmag) { return from_log(+1, std::move(logmag)); }

    static LogReal from_value(const Real& x) {
        if (x == 0)
            return zero();
        return x > 0 ? from_log(+1, log(x)) : from_log(-1, log(Real(-x)));
    }

    int sign() const { return sign_; }
    const Real& logmag() const { return logmag_; }
    bool is_zero() const { return sign_ == 0; }

    // sign * exp(logmag); overflows to +/-inf beyond the MPFR exponent range.
    Real value() const {
        if (sign_ == 0)
            return Real(0);
        Real v = exp(logmag_);
        return sign_ < 0 ? Real(-v) : v;
    }

    Real log10_magnitude() const { return logmag_ / log(Real(10)); }

    LogReal abs() const { return sign_ == 0 ? zero() : from_log(+1, logmag_); }

    LogReal operator-() const { return from_log(-sign_, logmag_); }

    LogReal& operator*=(const LogReal& o) {
        if (sign_ == 0 || o.sign_ == 0)
            return *this = zero();
        sign_ *= o.sign_;
        logmag_ += o.logmag_;
        return *this;
    }

    LogReal& operator/=(const LogReal& o) {
        if (o.sign_ == 0)
            throw domain_error("LogReal: division by exact zero");
        if (sign_ == 0)
            return *this;
        sign_ *= o.sign_;
        logmag_ -= o.logmag_;
        return *this;
    }

    // x^k for integer k; requires x != 0 when k < 0.
    LogReal pow_int(long k) const {
        if (sign_ == 0) {
            if (k < 0)
                throw domain_error("LogReal: negative power of zero");
            return k == 0 ? one() : zero();
        }
        int s = (sign_ < 0 && (k % 2 != 0)) ? -1 : +1;
        return from_log(s, logmag_ * k);
    }

    // x^e for real e; requires x > 0 (or x = 0 with e > 0).
    LogReal pow(const Real& e) const {
        if (sign_ == 0) {
            if (e <= 0)
                throw domain_error("LogReal: zero to nonpositive real power");
            return zero();
        }
        if (sign_ < 0)
            throw domain_error("LogReal: real power of a negative value");
        return from_log(+1, logmag_ * e);
    }

private:
    int sign_;
    Real logmag_;
};

// a + b in log domain. Exact zero when the signs oppose and the log
// magnitudes agree bit-for-bit at working precision.
LogReal log_add(const LogReal& a, const LogReal& b);

inline LogReal operator*(LogReal a, const LogReal& b) { return a *= b; }
inline LogReal operator/(LogReal a, const LogReal& b) { return a /= b; }
inline LogReal operator+(const LogReal& a, const LogReal& b) { return log_add(a, b); }
inline LogReal operator-(const LogReal& a, const LogReal& b) { return log_add(a, -b); }

// |a| < |b| by magnitude; zeros sort below everything nonzero.
inline bool mag_less(const LogReal& a, const LogReal& b) {
    if (a.is_zero())
        return !b.is_zero();
    if (b.is_zero())
        return false;
    return a.logmag() < b.logmag();
}

struct SumTrace {
    LogReal value;
    Real peak_logmag; // log of the largest |term|; meaningless when terms == 0
    long terms = 0;
};

// Cancellation-aware signed sum: terms are bucketed per sign, each bucket
// folded in descending magnitude, and the buckets combined in one final
// subtraction. peak_logmag feeds the harness's lost-digits diagnostic.
SumTrace log_sum(std::vector<LogReal> terms);

// |a - b| / |b| as a plain Real; b must be nonzero.
Real rel_diff(const LogReal& a, const LogReal& b);

} // namespace qscale

#endif
