#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qscale/bernoulli.hpp"
#include "qscale/qpochhammer.hpp"
#include "testutil.hpp"

using namespace qscale;
using namespace qscale::test;

TEST_CASE("qpoch_finite: hand values") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -45);
    QParameter q = QParameter::from_q(Real(1) / 2);

    CHECK(qpoch_finite(LogReal::from_value(Real("17.3")), q, 0).logmag() == 0);
    CHECK(qpoch_finite(LogReal::one(), q, 3).sign() == 0);
    CHECK(rel_close(qpoch_finite(LogReal::from_value(Real(1) / 2), q, 2),
                    LogReal::from_value(Real(3) / 8), tol));
    CHECK_THROWS_AS(qpoch_finite(LogReal::one(), q, -1), domain_error);
}

TEST_CASE("qpoch_infinite: certified value and frozen reference") {
    PrecisionScope scope{Precision(60)};
    QParameter q = QParameter::from_q(Real(1) / 2);
    auto r = qpoch_infinite(LogReal::from_value(Real(1) / 2), q, pow(Real(10), -40));

    // Oracle: same product with 4x the certified factor count.
    LogReal oracle = qpoch_finite(LogReal::from_value(Real(1) / 2), q, 4 * r.tail.n_terms);
    CHECK(rel_close(r.value, oracle, pow(Real(10), -39)));

    // (1/2; 1/2)_inf, 30 frozen digits.
    CHECK(rel_close(r.value, LogReal::from_value(Real("0.288788095086602421278899721929")),
                    pow(Real(10), -29)));

    auto one = qpoch_infinite(LogReal::zero(), q, pow(Real(10), -30));
    CHECK(one.value.logmag() == 0);
    CHECK(one.tail.n_terms == 0);

    // vanishing factor: a = 1 means the k = 0 factor is zero
    QParameter q9 = QParameter::from_q(Real(9) / 10);
    CHECK(qpoch_infinite(LogReal::one(), q9, pow(Real(10), -10)).value.sign() == 0);
}

TEST_CASE("qpoch_infinite: tail bound dominates the observed change") {
    PrecisionScope scope{Precision(50)};
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        Real qv = Real(rng.uniform(0.05, 0.95));
        Real av = Real(rng.uniform(-1.8, 1.8));
        if (av == 0)
            continue;
        QParameter q = QParameter::from_q(qv);
        Real eps = pow(Real(10), -rng.uniform_int(8, 35));
        auto r = qpoch_infinite(LogReal::from_value(av), q, eps);
        if (r.value.is_zero())
            continue;
        LogReal doubled = qpoch_finite(LogReal::from_value(av), q, 2 * r.tail.n_terms);
        if (doubled.is_zero())
            continue;
        Real observed = abs(expm1(doubled.logmag() - r.value.logmag()));
        CHECK(observed <= r.tail.value.value());
    }
}

TEST_CASE("qpoch splitting identity (a;q)_n (a q^n;q)_inf = (a;q)_inf") {
    PrecisionScope scope{Precision(50)};
    Rng rng(43);
    Real eps = pow(Real(10), -30);
    for (Real qv : {Real(1) / 10, Real(1) / 2, Real(9) / 10}) {
        QParameter q = QParameter::from_q(qv);
        for (int trial = 0; trial < 5; ++trial) {
            Real av = Real(rng.uniform(-2, 2));
            long n = rng.uniform_int(0, 10);
            LogReal a = LogReal::from_value(av);
            LogReal lhs = qpoch_finite(a, q, n) *
                          qpoch_infinite(a * q.power_int(n), q, eps).value;
            LogReal rhs = qpoch_infinite(a, q, eps).value;
            if (rhs.is_zero()) {
                CHECK(lhs.is_zero());
                continue;
            }
            CHECK(rel_close(lhs, rhs, eps * 10));
        }
    }
}

TEST_CASE("qpoch_infinite: certified N capped") {
    PrecisionScope scope{Precision(50)};
    // q extremely close to 1 makes the certified N astronomical.
    QParameter q(Real("1e-9")); // q = e^{-pi*1e-9}
    CHECK_THROWS_AS(qpoch_infinite(LogReal::one(), q, pow(Real(10), -40)), scale_error);
}

TEST_CASE("qgamma: telescoping values, functional equation, poles") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -40);
    QParameter q = QParameter::from_q(Real(1) / 2);

    CHECK(rel_close(qgamma(Real(1), q), LogReal::one(), tol));
    CHECK(rel_close(qgamma(Real(2), q), LogReal::one(), tol));
    CHECK(rel_close(qgamma(Real(3), q), LogReal::from_value(Real(3) / 2), tol));

    for (Real qv : {Real(3) / 10, Real(8) / 10}) {
        QParameter qq = QParameter::from_q(qv);
        for (Real z : {Real(1) / 2, Real(1), Real(9) / 4}) {
            LogReal lhs = qgamma(z + 1, qq);
            LogReal rhs = LogReal::from_value(-expm1(z * qq.log_q())) /
                          LogReal::from_value(qq.one_minus_q()) * qgamma(z, qq);
            CHECK(rel_close(lhs, rhs, tol));
        }
    }

    CHECK_THROWS_AS(qgamma(Real(0), q), pole_error);
    CHECK_THROWS_AS(qgamma(Real(-2), q), pole_error);
}

TEST_CASE("Euler Gamma consumed from the environment matches the product definition") {
    // 1/Gamma(z) = z prod_k (1 + z/k)(1 + 1/k)^{-z}, accelerated with the
    // (z - z^2)/(2K) tail estimate; a 3-point convention check.
    PrecisionScope scope{Precision(40)};
    const long K = 200000;
    for (Real z : {Real(1) / 2, Real(3) / 2, Real(9) / 4}) {
        Real acc = log(z);
        for (long k = 1; k <= K; ++k)
            acc += log1p(z / k) - z * log1p(Real(1) / k);
        acc += (z - z * z) / (2 * K); // leading tail term
        Real direct = -lgamma(z);
        CHECK(abs(acc - direct) < pow(Real(10), -9));
    }
}

TEST_CASE("mcintosh_log_qpoch: pinned forms at x = 1 and x = 2") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -40);
    Real lambda(10);
    QParameter q(1 / lambda); // t = pi/lambda in the expansion's variable

    // x = 1, p = 1: -pi lambda/6 - (1/2) log(pi/lambda) + log(2 pi)/2 + pi/(24 lambda).
    Real got = mcintosh_log_qpoch(Real(1), q, 1);
    Real expect = -pi() * lambda / 6 - log(pi() / lambda) / 2 + log(2 * pi()) / 2 +
                  pi() / (24 * lambda);
    CHECK(rel_close(got, expect, tol));

    // x = 2: the p = 1 correction is -B_1 B_2(2)/2! * t = +13 t/24 (exact
    // rational via the Bernoulli generators).
    Real t = pi() * q.t();
    Real main = -pi() * pi() / (6 * t) + (Real(0.5) - 2) * log(t) + log(2 * pi()) / 2 -
                lgamma(Real(2));
    Real corr = mcintosh_log_qpoch(Real(2), q, 1) - main;
    Real coeff = -Real(bernoulli_number(1)) * bernoulli_polynomial(2, Real(2)) / 2;
    CHECK(rel_close(corr, coeff * t, pow(Real(10), -35)));
    CHECK(rel_close(coeff, Real(13) / 24, tol));

    CHECK_THROWS_AS(mcintosh_log_qpoch(Real(0), q, 3), domain_error);
    CHECK_THROWS_AS(mcintosh_log_qpoch(Real(1), q, 21), unsupported_error);
}

namespace {

Real exact_log_qpoch(const Real& x, const QParameter& q) {
    return qpoch_infinite(LogReal::exp_of(x * q.log_q()), q, pow(Real(10), -55))
        .value.logmag();
}

} // namespace

TEST_CASE("mcintosh_log_qpoch: agreement and convergence order") {
    PrecisionScope scope{Precision(60)};

    // (x = 0.5, t = 0.01, p = 5): the expansion terminates at x = 1/2, so the
    // agreement is limited by rounding only; C t^6 holds with room.
    {
        QParameter q(Real("0.01") / pi());
        Real diff = abs(mcintosh_log_qpoch(Real(1) / 2, q, 5) -
                        exact_log_qpoch(Real(1) / 2, q));
        CHECK(diff < 100 * pow(Real("0.01"), 6));
    }

    // Order check at x = 1.7 where every even-order coefficient is nonzero:
    // halving t must shrink the error by about 2^{p+1}.
    for (int p : {1, 3, 5}) {
        Real t1("0.02"), t2("0.01");
        QParameter q1(t1 / pi()), q2(t2 / pi());
        Real x("1.7");
        Real e1 = abs(mcintosh_log_qpoch(x, q1, p) - exact_log_qpoch(x, q1));
        Real e2 = abs(mcintosh_log_qpoch(x, q2, p) - exact_log_qpoch(x, q2));
        Real ratio = e1 / e2;
        Real expect = pow(Real(2), p + 1);
        CHECK(ratio > expect / 4);
        CHECK(ratio < expect * 4);
    }

    // x in {0.5, 1}: the correction series terminates, the residual is
    // super-polynomially small; assert it sits at the comparison noise floor.
    for (int p : {1, 3, 5}) {
        for (Real x : {Real(1) / 2, Real(1)}) {
            QParameter q(Real("0.01") / pi());
            Real diff = abs(mcintosh_log_qpoch(x, q, p) - exact_log_qpoch(x, q));
            CHECK(diff < pow(Real(10), -45)); // ~82 * 1e-55 rounding scale
        }
    }
}

TEST_CASE("log_qpoch_simplified: lemma main term") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -40);

    // x = 1, lambda = 10: sqrt(2) lambda^{1/2} e^{-pi lambda/6}.
    {
        QParameter q = QParameter::from_lambda(Real(10));
        LogReal got = log_qpoch_simplified(Real(1), q);
        LogReal expect = LogReal::exp_of(ln2() / 2 + log(Real(10)) / 2 - pi() * 10 / 6);
        CHECK(rel_close(got, expect, tol));
    }

    // x = 2: sqrt(2) pi^{-1} lambda^{3/2} e^{-pi lambda/6}.
    {
        QParameter q = QParameter::from_lambda(Real(7));
        LogReal got = log_qpoch_simplified(Real(2), q);
        LogReal expect =
            LogReal::exp_of(ln2() / 2 - log(pi()) + Real(3) / 2 * log(Real(7)) -
                            pi() * 7 / 6);
        CHECK(rel_close(got, expect, tol));
    }

    // x = 1, lambda = 50: relative deviation from the certified product is
    // within 5/lambda (the O(1/lambda) constant, measured).
    {
        Real lambda(50);
        QParameter q = QParameter::from_lambda(lambda);
        LogReal exact = qpoch_infinite(q.power(Real(1)), q, pow(Real(10), -40)).value;
        Real dev = abs(expm1(exact.logmag() - log_qpoch_simplified(Real(1), q).logmag()));
        CHECK(dev <= 5 / lambda);
    }

    CHECK_THROWS_AS(log_qpoch_simplified(Real(-1), QParameter::from_lambda(Real(5))),
                    domain_error);
}
