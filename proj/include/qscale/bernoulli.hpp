#ifndef QSCALE_BERNOULLI_HPP
#define QSCALE_BERNOULLI_HPP

#include "qscale/real.hpp"

namespace qscale {

// Highest orders the generators support; the truncated log-Pochhammer
// expansion never asks for more.
constexpr int kMaxBernoulliNumber = 64;
constexpr int kMaxBernoulliPolynomial = 65;

// B_k as an exact rational, in the B_1 = -1/2 convention (the one that makes
// the first correction term of the log-Pochhammer expansion at x = 1 equal
// -t/24). Throws unsupported_error for k > 64.
Rational bernoulli_number(int k);

// B_k(x) = sum_{j=0}^{k} C(k,j) B_j x^{k-j}, coefficients exact, evaluation
// at working precision. Throws unsupported_error for k > 65.
Real bernoulli_polynomial(int k, const Real& x);

namespace detail {
BigInt binomial(int n, int k);
}

} // namespace qscale

#endif
