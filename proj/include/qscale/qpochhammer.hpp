#ifndef QSCALE_QPOCHHAMMER_HPP
#define QSCALE_QPOCHHAMMER_HPP

#include "qscale/log_real.hpp"
#include "qscale/qparameter.hpp"

namespace qscale {

// Hard cap on certified truncation counts; beyond this the requested
// tolerance is not reachable in reasonable memory/time and the caller gets a
// scale_error instead of a silent heuristic.
constexpr long kMaxPochTerms = 10'000'000;

// Certificate attached to a truncated infinite product: the true value is
// computed_value * (1 + r) with |r| <= value, established after n_terms
// factors.
struct TailBound {
    LogReal value;
    long n_terms = 0;
};

struct QPochResult {
    LogReal value;
    TailBound tail;
};

// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), term by term in log domain.
// n = 0 is the empty product. Negative n is out of scope.
LogReal qpoch_finite(const LogReal& a, const QParameter& q, long n);

// (a;q)_infty truncated at the smallest N with 2|a|q^N/(1-q) < min(eps, 1/2);
// that bound is the certified relative tail and is reported alongside the
// value. Vanishing factors (a = q^{-k}) give an exact zero. Factors may be
// negative for |a| > 1; the sign is tracked exactly.
QPochResult qpoch_infinite(const LogReal& a, const QParameter& q, const Real& eps);

// Gamma_q(z) = (q;q)_infty / (q^z;q)_infty * (1-q)^{1-z}. Poles at
// z = 0, -1, -2, ... are rejected.
LogReal qgamma(const Real& z, const QParameter& q);

// Truncated expansion of log (q^x;q)_infty in powers of t = -log q:
//   -pi^2/(6t) + (1/2 - x) log t + log(2pi)/2 - log Gamma(x)
//     + sum_{k=1}^{p} B_k B_{k+1}(x) / (k (k+1)!) t^k.
// The caller owns the O(t^{p+1}) remainder. Requires x > 0, 1 <= p <= 20.
Real mcintosh_log_qpoch(const Real& x, const QParameter& q, int p);
constexpr int kDefaultMcintoshOrder = 8;

// Leading behaviour of (q^x;q)_infty for q = exp(-pi/lambda), lambda large:
//   sqrt(2) pi^{1-x} lambda^{x-1/2} / (Gamma(x) exp(pi lambda/6)),
// without the 1 + O(1/lambda) factor.
LogReal log_qpoch_simplified(const Real& x, const QParameter& q);

} // namespace qscale

#endif
