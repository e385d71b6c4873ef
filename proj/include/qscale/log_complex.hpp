#ifndef QSCALE_LOG_COMPLEX_HPP
#define QSCALE_LOG_COMPLEX_HPP

#include "qscale/log_real.hpp"

namespace qscale {

// A complex value restricted to the coordinate axes: magnitude in log domain
// times an exact phase i^quarter. Every phase the scaled formulas produce
// ((-1)^n, (-i)^n, e^{nu pi i/2} for integer nu) lives here. Addition is
// defined on a shared axis only; mixed-axis sums throw phase_error.
class LogComplex {
public:
    LogComplex() : quarter_(0) {}

    // Real embedding: negative sign folds into a half-turn.
    LogComplex(const LogReal& x) : quarter_(0), mag_(x) { canonicalize(); }

    static LogComplex from_polar(int quarter, const LogReal& magnitude) {
        LogComplex z;
        z.quarter_ = mod4(quarter);
        z.mag_ = magnitude;
        z.canonicalize();
        return z;
    }

    static LogComplex zero() { return LogComplex(); }
    static LogComplex one() { return LogComplex(LogReal::one()); }

    int quarter() const { return quarter_; }
    // Canonical magnitude; sign() is 0 or +1 after canonicalization.
    const LogReal& magnitude() const { return mag_; }
    bool is_zero() const { return mag_.is_zero(); }

    bool on_real_axis() const { return quarter_ % 2 == 0; }

    // The value as a signed real; requires the real axis.
    LogReal real_signed() const {
        if (is_zero())
            return LogReal::zero();
        if (!on_real_axis())
            throw phase_error("LogComplex: value is not on the real axis");
        return quarter_ == 0 ? mag_ : -mag_;
    }

    LogComplex& operator*=(const LogComplex& o) {
        mag_ *= o.mag_;
        quarter_ = is_zero() ? 0 : mod4(quarter_ + o.quarter_);
        return *this;
    }

    LogComplex& operator/=(const LogComplex& o) {
        if (o.is_zero())
            throw domain_error("LogComplex: division by exact zero");
        mag_ /= o.mag_;
        quarter_ = is_zero() ? 0 : mod4(quarter_ - o.quarter_);
        return *this;
    }

    LogComplex operator-() const { return from_polar(quarter_ + 2, mag_); }

    // Multiply by i^k.
    LogComplex rotated(int k) const { return from_polar(quarter_ + k, mag_); }

    LogComplex pow_int(long k) const {
        if (is_zero()) {
            if (k < 0)
                throw domain_error("LogComplex: negative power of zero");
            return k == 0 ? one() : zero();
        }
        return from_polar(static_cast<int>((static_cast<long>(quarter_) * k) % 4),
                          mag_.pow_int(k));
    }

    friend LogComplex operator+(const LogComplex& a, const LogComplex& b) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.quarter_ % 2 != b.quarter_ % 2)
            throw phase_error("LogComplex: addition of values on different axes");
        int axis = a.quarter_ % 2; // 0 or 1
        LogReal s = log_add(a.signed_on_axis(), b.signed_on_axis());
        LogComplex r(s);
        return axis == 0 ? r : r.rotated(1);
    }

    friend LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

private:
    static int mod4(int k) { return ((k % 4) + 4) % 4; }

    // Signed coordinate along the value's own axis.
    LogReal signed_on_axis() const { return quarter_ < 2 ? mag_ : -mag_; }

    void canonicalize() {
        if (mag_.is_zero()) {
            quarter_ = 0;
            mag_ = LogReal::zero();
        } else if (mag_.sign() < 0) {
            mag_ = -mag_;
            quarter_ = mod4(quarter_ + 2);
        }
    }

    int quarter_;
    LogReal mag_;
};

inline LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
inline LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

} // namespace qscale

#endif
