#include "qscale/bernoulli.hpp"

#include <vector>

namespace qscale {

namespace detail {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n)
        return BigInt(0);
    BigInt num(1), den(1);
    for (int j = 0; j < k; ++j) {
        num *= n - j;
        den *= j + 1;
    }
    return num / den;
}

} // namespace detail

namespace {

// B_0..B_65 from the recurrence sum_{j=0}^{k} C(k+1,j) B_j = 0, k >= 1.
// One past kMaxBernoulliNumber so the polynomial of order 65 has its
// coefficients available.
const std::vector<Rational>& bernoulli_table() {
    static const std::vector<Rational> table = [] {
        std::vector<Rational> b;
        b.reserve(kMaxBernoulliPolynomial + 1);
        b.emplace_back(1);
        for (int k = 1; k <= kMaxBernoulliPolynomial; ++k) {
            Rational s(0);
            for (int j = 0; j < k; ++j)
                s += Rational(detail::binomial(k + 1, j)) * b[j];
            b.push_back(-s / Rational(k + 1));
        }
        return b;
    }();
    return table;
}

} // namespace

Rational bernoulli_number(int k) {
    if (k < 0)
        throw domain_error("bernoulli_number: negative order");
    if (k > kMaxBernoulliNumber)
        throw unsupported_error("bernoulli_number: order " + std::to_string(k) +
                                " exceeds supported maximum " +
                                std::to_string(kMaxBernoulliNumber));
    return bernoulli_table()[static_cast<size_t>(k)];
}

Real bernoulli_polynomial(int k, const Real& x) {
    if (k < 0)
        throw domain_error("bernoulli_polynomial: negative order");
    if (k > kMaxBernoulliPolynomial)
        throw unsupported_error("bernoulli_polynomial: order " + std::to_string(k) +
                                " exceeds supported maximum " +
                                std::to_string(kMaxBernoulliPolynomial));
    // Horner over j with exact rational coefficients C(k,j) B_j.
    Real acc(0);
    for (int j = 0; j <= k; ++j) {
        Rational c = Rational(detail::binomial(k, j)) *
                     bernoulli_table()[static_cast<size_t>(j)];
        acc = acc * x + Real(c);
    }
    return acc;
}

} // namespace qscale
