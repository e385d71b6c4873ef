#ifndef QSCALE_REAL_HPP
#define QSCALE_REAL_HPP

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "qscale/errors.hpp"

namespace qscale {

// Extended-precision real with runtime-selected decimal precision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Exact arithmetic for Bernoulli generation and test oracles.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Decimal working precision. Results are trusted to digits - 10 significant
// decimal digits; the last 10 are guard digits.
struct Precision {
    int digits;

    explicit Precision(int d) : digits(d) {
        if (d < 15)
            throw config_error("Precision: digits must be >= 15, got " + std::to_string(d));
    }
};

constexpr int kGuardDigits = 10;

// Sets the ambient decimal precision for Real construction and arithmetic,
// restoring the previous value on destruction. All values that take part in
// one computation should be constructed inside the same scope.
class PrecisionScope {
public:
    explicit PrecisionScope(Precision p);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// Current ambient decimal precision.
int working_digits();

// Default relative tolerance handed to certified-truncation evaluators when
// the caller does not pass one: 10^{-(digits-2)}.
Real default_tolerance();

inline Real pi() { return boost::math::constants::pi<Real>(); }
inline Real ln2() { return boost::math::constants::ln_two<Real>(); }

// cos(pi*x) and sin(pi*x) with exact reduction modulo 2, exact zeros at
// representable half-integer (resp. integer) x, and full relative accuracy
// near the zeros.
Real cos_pi(const Real& x);
Real sin_pi(const Real& x);

// Fixed scientific rendering with `digits` significant digits; deterministic
// for a given precision, used for all emitted artifacts.
std::string to_sci(const Real& x, int digits);

} // namespace qscale

#endif
