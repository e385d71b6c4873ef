#include "qscale/qpochhammer.hpp"

#include "qscale/bernoulli.hpp"

namespace qscale {

namespace {

// 1 - x for x given in log form, staying accurate when x is tiny or huge.
LogReal one_minus(const LogReal& x) {
    if (x.is_zero())
        return LogReal::one();
    if (x.sign() > 0 && x.logmag() == 0)
        return LogReal::zero(); // x == 1 exactly
    if (x.sign() < 0)
        return LogReal::from_log(+1, x.logmag() + log1p(exp(-x.logmag())));
    if (x.logmag() < 0)
        return LogReal::from_log(+1, log(-expm1(x.logmag())));
    return LogReal::from_log(-1, x.logmag() + log(-expm1(-x.logmag())));
}

} // namespace

LogReal qpoch_finite(const LogReal& a, const QParameter& q, long n) {
    if (n < 0)
        throw domain_error("qpoch_finite: negative n is out of scope");
    LogReal prod = LogReal::one();
    LogReal aqk = a;
    for (long k = 0; k < n; ++k) {
        LogReal f = one_minus(aqk);
        if (f.is_zero())
            return LogReal::zero();
        prod *= f;
        aqk *= q.power_int(1);
    }
    return prod;
}

QPochResult qpoch_infinite(const LogReal& a, const QParameter& q, const Real& eps) {
    if (!(eps > 0))
        throw domain_error("qpoch_infinite: tolerance must be positive");
    if (a.is_zero())
        return {LogReal::one(), {LogReal::zero(), 0}};

    // Smallest N with 2|a| q^N / (1-q) < min(eps, 1/2); the truncation
    // certificate comes straight from the remainder lemma.
    Real target = log(eps < Real(0.5) ? eps : Real(0.5));
    Real need = (target - ln2() - a.logmag() + q.log_one_minus_q()) / q.log_q();
    long n_terms = 0;
    if (need > 0) {
        if (need > Real(kMaxPochTerms))
            throw scale_error("qpoch_infinite: certified truncation needs more than " +
                              std::to_string(kMaxPochTerms) + " factors");
        n_terms = need.convert_to<long>() + 1;
    }

    QPochResult out;
    out.value = qpoch_finite(a, q, n_terms);
    out.tail.n_terms = n_terms;
    out.tail.value = LogReal::from_log(
        +1, ln2() + a.logmag() + n_terms * q.log_q() - q.log_one_minus_q());
    return out;
}

LogReal qgamma(const Real& z, const QParameter& q) {
    if (z <= 0 && floor(z) == z)
        throw pole_error("qgamma: pole at nonpositive integer z");
    Real eps = default_tolerance();
    LogReal num = qpoch_infinite(LogReal::exp_of(q.log_q()), q, eps).value;
    LogReal den = qpoch_infinite(LogReal::exp_of(z * q.log_q()), q, eps).value;
    LogReal scale = LogReal::exp_of((1 - z) * q.log_one_minus_q());
    return num / den * scale;
}

Real mcintosh_log_qpoch(const Real& x, const QParameter& q, int p) {
    if (!(x > 0))
        throw domain_error("mcintosh_log_qpoch: requires x > 0");
    if (p < 1 || p > 20)
        throw unsupported_error("mcintosh_log_qpoch: order p must be in [1, 20]");

    const Real t = pi() * q.t(); // q = e^{-t}
    Real acc = -pi() * pi() / (6 * t) + (Real(0.5) - x) * log(t) +
               log(2 * pi()) / 2 - lgamma(x);

    // Correction sum. In the B_1 = -1/2 convention the series enters with an
    // overall minus sign: the k-th coefficient is -B_k B_{k+1}(x)/(k (k+1)!),
    // equivalently B_k B_{k+1}(1-x)/(k (k+1)!). The x = 1 specialization must
    // come out as +t/24, the eta-product correction that the corollaries
    // divide through.
    Real tk(1);
    BigInt fact(1); // (k+1)!
    for (int k = 1; k <= p; ++k) {
        tk *= t;
        fact *= k + 1;
        Rational bk = bernoulli_number(k);
        if (bk == 0)
            continue; // odd k >= 3
        acc -= Real(bk) * bernoulli_polynomial(k + 1, x) / (k * Real(fact)) * tk;
    }
    return acc;
}

LogReal log_qpoch_simplified(const Real& x, const QParameter& q) {
    if (!(x > 0))
        throw domain_error("log_qpoch_simplified: requires x > 0");
    const Real lambda = 1 / q.t();
    Real lm = ln2() / 2 + (1 - x) * log(pi()) + (x - Real(0.5)) * log(lambda) -
              lgamma(x) - pi() * lambda / 6;
    return LogReal::exp_of(lm);
}

} // namespace qscale
