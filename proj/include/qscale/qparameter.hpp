#ifndef QSCALE_QPARAMETER_HPP
#define QSCALE_QPARAMETER_HPP

#include "qscale/log_real.hpp"
#include "qscale/real.hpp"

namespace qscale {

// The base q = exp(-pi t), t > 0, held by its exact logarithm. Scaled runs
// use t = 1/lambda_n, so log q = -pi/lambda_n is formed directly from lambda
// and never by rounding q itself. 1 - q goes through expm1, not subtraction.
class QParameter {
public:
    explicit QParameter(Real t) : t_(std::move(t)) {
        if (!(t_ > 0))
            throw domain_error("QParameter: t must be positive (q in (0,1))");
        log_q_ = -pi() * t_;
    }

    static QParameter from_q(const Real& q) {
        if (!(q > 0 && q < 1))
            throw domain_error("QParameter: q must lie in (0,1)");
        return QParameter(-log(q) / pi());
    }

    static QParameter from_lambda(const Real& lambda) {
        if (!(lambda > 0))
            throw domain_error("QParameter: lambda must be positive");
        return QParameter(1 / lambda);
    }

    const Real& t() const { return t_; }
    const Real& log_q() const { return log_q_; }

    Real q() const { return exp(log_q_); }
    Real one_minus_q() const { return -expm1(log_q_); }
    Real log_one_minus_q() const { return log(one_minus_q()); }

    // q^e as a log-domain value, exact in the exponent.
    LogReal power(const Real& e) const { return LogReal::exp_of(e * log_q_); }
    LogReal power_int(long e) const { return LogReal::exp_of(e * log_q_); }

    // The base q^m (used by the triple products and the theta nome q^ell).
    QParameter raised(const Real& m) const { return QParameter(t_ * m); }

private:
    Real t_;
    Real log_q_;
};

} // namespace qscale

#endif
