#include "qscale/real.hpp"

#include <mpfr.h>

namespace qscale {

namespace {

// Values of the scaled asymptotics reach exp(pi*lambda*(v + 2n/lambda)^2);
// widen the MPFR exponent window once so nothing clips before the log-domain
// layer takes over.
void widen_exponent_range() {
    static const bool done = [] {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        return true;
    }();
    (void)done;
}

} // namespace

PrecisionScope::PrecisionScope(Precision p) : saved_(Real::default_precision()) {
    widen_exponent_range();
    Real::default_precision(static_cast<unsigned>(p.digits));
}

PrecisionScope::~PrecisionScope() {
    Real::default_precision(saved_);
}

int working_digits() {
    return static_cast<int>(Real::default_precision());
}

Real default_tolerance() {
    return pow(Real(10), -(working_digits() - 2));
}

namespace {

// Reduce x into [0, 2) exactly. Requires |x| small enough that consecutive
// integers are representable at working precision.
Real reduce_mod2(const Real& x) {
    Real r = x - 2 * floor(x / 2);
    if (r < 0)
        r += 2; // rounding at the boundary
    if (r >= 2)
        r -= 2;
    return r;
}

} // namespace

Real cos_pi(const Real& x) {
    Real r = reduce_mod2(x); // [0, 2)
    if (r > 1)
        r = 2 - r; // exact (Sterbenz), cos is even around 0 mod 2
    // r in [0, 1]; zero of cos(pi r) at r = 1/2
    Real d = r - Real(0.5); // exact at working precision
    if (d == 0)
        return Real(0);
    if (abs(d) <= Real(0.25))
        return -sin(pi() * d); // relative accuracy near the zero
    return cos(pi() * r);
}

Real sin_pi(const Real& x) {
    Real r = reduce_mod2(x); // [0, 2); zeros at 0 and 1
    int sign = 1;
    if (r > 1) {
        r = 2 - r;
        sign = -1;
    }
    // r in [0, 1]
    if (r == 0 || r == 1)
        return Real(0);
    if (r <= Real(0.25))
        return sign * sin(pi() * r);
    if (r >= Real(0.75))
        return sign * sin(pi() * (1 - r)); // 1 - r exact
    return sign * cos(pi() * (r - Real(0.5)));
}

std::string to_sci(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

} // namespace qscale
