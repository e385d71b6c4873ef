#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qscale/asymptotics.hpp"
#include "qscale/qpochhammer.hpp"
#include "testutil.hpp"

using namespace qscale;
using namespace qscale::test;

TEST_CASE("admissible scales: accepted and rejected families") {
    CHECK_NOTHROW(AdmissibleScale::power(0.4));
    CHECK_NOTHROW(AdmissibleScale::power(0.3, 1)); // n^{0.3} log n
    CHECK_NOTHROW(AdmissibleScale::log_power(2));  // log^2 n
    CHECK_THROWS_AS(AdmissibleScale::power(0.6), scale_error);  // n/lambda^2 shrinks
    CHECK_THROWS_AS(AdmissibleScale::power(0.5), scale_error);  // boundary excluded
    CHECK_THROWS_AS(AdmissibleScale::log_power(1), scale_error); // needs gamma > 1
    CHECK_THROWS_AS(AdmissibleScale::power(0.3, -1), scale_error);

    CHECK_NOTHROW(AdmissibleScale::parse("n^0.4"));
    CHECK_NOTHROW(AdmissibleScale::parse("n^0.3*log"));
    CHECK_NOTHROW(AdmissibleScale::parse("log^2"));
    CHECK_THROWS_AS(AdmissibleScale::parse("n^0.6"), scale_error);
    CHECK_THROWS_AS(AdmissibleScale::parse("log"), scale_error);
    CHECK_THROWS_AS(AdmissibleScale::parse("bogus"), config_error);

    // custom tables are probed numerically on their own points
    std::map<long, double> good;
    for (long n = 256; n <= (1L << 22); n *= 4)
        good[n] = std::pow(static_cast<double>(n), 0.35);
    CHECK_NOTHROW(AdmissibleScale::table(good));

    std::map<long, double> bad;
    for (long n = 256; n <= (1L << 22); n *= 4)
        bad[n] = std::pow(static_cast<double>(n), 0.7); // n/lambda^2 decreasing
    CHECK_THROWS_AS(AdmissibleScale::table(bad), scale_error);
}

TEST_CASE("scaled points: log q = -pi/lambda by construction") {
    PrecisionScope scope{Precision(50)};
    AdmissibleScale s = AdmissibleScale::power(0.4);
    ScaledPoint p = ScaledPoint::make(s, 64, Real(1) / 4);
    CHECK(p.q.log_q() == -pi() / p.lambda);
    CHECK(p.n == 64);
    CHECK_THROWS_AS(ScaledPoint::make(s, 0, Real(0)), domain_error);
}

TEST_CASE("g-theorem main terms: direct substitutions") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -40);
    SeriesSpec empty = SeriesSpec::empty();

    // v = 0, ell = 1, lambda = 25, n = 5: 5 e^{4 pi}.
    {
        ScaledPoint p = ScaledPoint::make(5, Real(0), Real(25));
        LogReal got = g_asym_minus(empty, p);
        CHECK(rel_close(got, LogReal::exp_of(log(Real(5)) + 4 * pi()), tol));
    }

    // ell = 2 halves the Gaussian rate.
    {
        SeriesSpec two = SeriesSpec::empty(Real(2));
        ScaledPoint p = ScaledPoint::make(5, Real("0.3"), Real(25));
        Real c = Real("0.3") + 2 * 5 * Real(2) / 25;
        CHECK(rel_close(g_asym_minus(two, p),
                        LogReal::exp_of(pi() * 25 / 2 * c * c + log(Real(25) / 2) / 2),
                        tol));
    }

    // plus branch: exact cosine zero gives an exactly zero main term.
    {
        ScaledPoint p = ScaledPoint::make(4, Real(1) / 64, Real(32));
        CHECK(g_asym_plus(empty, p).sign() == 0);
        CosBracket b = g_asym_plus_bracket(empty, p);
        CHECK(b.cos_value == 0);
        CHECK(b.folded().is_zero());
    }

    // plus branch at v = 0: cos = 1, value 2 sqrt(lambda/ell) e^{...}.
    {
        ScaledPoint p = ScaledPoint::make(3, Real(0), Real(16));
        Real c = Real(2 * 3) / 16;
        LogReal expect =
            LogReal::exp_of(pi() * 16 * c * c - pi() * 16 / 4 + ln2() + log(Real(16)) / 2);
        CHECK(rel_close(g_asym_plus(empty, p), expect, tol));
    }
}

TEST_CASE("h-theorem main terms: chi structure") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -40);
    SeriesSpec empty = SeriesSpec::empty();

    // even n: no (n-1)chi correction, center ell*n/(2 lambda).
    {
        ScaledPoint p = ScaledPoint::make(6, Real("0.2"), Real(20));
        Real c = Real("0.2") + Real(6) / (2 * 20);
        CHECK(rel_close(h_asym_minus(empty, p),
                        LogReal::exp_of(pi() * 20 * c * c + log(Real(20)) / 2), tol));
    }

    // odd n: explicit (n-1)chi/(2 lambda) correction.
    {
        ScaledPoint p7 = ScaledPoint::make(7, Real("0.2"), Real(20));
        Real c7 = Real("0.2") + Real(7 - 1) / (2 * 20);
        LogReal expect = LogReal::exp_of(pi() * 20 * c7 * c7 +
                                         pi() * Real(7 - 1) / (2 * 20) +
                                         log(Real(20)) / 2);
        CHECK(rel_close(h_asym_minus(empty, p7), expect, tol));
    }

    // plus branch bracket: the cosine argument carries the same center.
    {
        ScaledPoint p = ScaledPoint::make(6, Real("0.2"), Real(20));
        CosBracket b = h_asym_plus_bracket(empty, p);
        CHECK(rel_close(b.cos_argument, 20 * (Real("0.2") + Real(6) / 40), tol));
    }
}

TEST_CASE("cor_aq: displayed main terms") {
    PrecisionScope scope{Precision(50)};
    Real tol = pow(Real(10), -40);

    // v=0, lambda=20, n=4, minus: (1/sqrt2) exp{pi 20 (8/20)^2 + 20pi/6 - pi/480}.
    {
        ScaledPoint p = ScaledPoint::make(4, Real(0), Real(20));
        Real lm = pi() * 20 * Real(8) / 20 * Real(8) / 20 + 20 * pi() / 6 -
                  pi() / 480 - ln2() / 2;
        CHECK(rel_close(cor_aq(p, Branch::minus), LogReal::exp_of(lm), tol));
    }

    // plus branch at lambda v = 1/2: zero main term.
    {
        ScaledPoint p = ScaledPoint::make(4, Real(1) / 64, Real(32));
        CHECK(cor_aq(p, Branch::plus).sign() == 0);
    }
}

TEST_CASE("cor_jackson: phases and domain") {
    PrecisionScope scope{Precision(50)};
    ScaledPoint p = ScaledPoint::make(4, Real(1) / 4, Real(12));

    CHECK(cor_jackson(p, Real(0), Branch::minus).quarter() == 0);
    CHECK(cor_jackson(p, Real(1), Branch::minus).quarter() == 1);
    CHECK(cor_jackson(p, Real(2), Branch::minus).quarter() == 2);
    CHECK_THROWS_AS(cor_jackson(p, Real(1) / 2, Branch::minus), phase_error);
    CHECK_NOTHROW(cor_jackson(p, Real(1) / 2, Branch::plus)); // real-argument branch
    CHECK_THROWS_AS(cor_jackson(p, Real(-3) / 2, Branch::plus), domain_error);

    // the cosine argument of the plus bracket is lambda v
    CosBracket b = cor_jackson_bracket(p, Real(0));
    CHECK(b.cos_argument == p.lambda * p.v);
}

TEST_CASE("cor_confluent: rho arithmetic and branch constants") {
    PrecisionScope scope{Precision(50)};
    ConfluentParams params = ConfluentParams::make(
        {Real(7) / 10}, {Real(2) / 5, Real(13) / 10});
    CHECK(abs(params.rho() + 2) < pow(Real(10), -45)); // 0.7 - 1.7 - 1 = -2
    CHECK(params.spec.ell == 1);

    ScaledPoint p = ScaledPoint::make(3, Real("0.1"), Real(10));
    LogReal minus = cor_confluent(params, p, Branch::minus);
    CosBracket plus = cor_confluent_bracket(params, p);
    // plus prefactor vs minus main term: + ln 2 - pi lambda/(4 ell).
    Real shift = plus.prefactor.magnitude().logmag() - minus.logmag();
    CHECK(rel_close(shift, ln2() - pi() * 10 / 4, pow(Real(10), -38)));
}

TEST_CASE("cor_ismail_masson: quarter phases of 1/(-i)^n and (-1)^n") {
    PrecisionScope scope{Precision(50)};
    ScaledPoint p = ScaledPoint::make(4, Real("0.2"), Real(9));

    // minus branch phase is i^n (n even: (-1)^{n/2})
    CHECK(cor_ismail_masson(ScaledPoint::make(4, Real("0.2"), Real(9)), 4, Branch::minus)
              .quarter() == 0);
    CHECK(cor_ismail_masson(ScaledPoint::make(2, Real("0.2"), Real(9)), 2, Branch::minus)
              .quarter() == 2);
    CHECK(cor_ismail_masson(ScaledPoint::make(3, Real("0.2"), Real(9)), 3, Branch::minus)
              .quarter() == 3);

    // plus branch phase is (-1)^n
    CHECK(cor_ismail_masson(p, 4, Branch::plus).quarter() == 0);
    CHECK(cor_ismail_masson(ScaledPoint::make(5, Real("0.2"), Real(9)), 5, Branch::plus)
              .quarter() == 2);
}

TEST_CASE("cor_stieltjes_wigert and cor_q_laguerre share main terms") {
    PrecisionScope scope{Precision(50)};
    ScaledPoint p = ScaledPoint::make(5, Real("0.15"), Real(11));
    LogReal s = cor_stieltjes_wigert(p, 5, Branch::minus);
    LogReal l0 = cor_q_laguerre(p, 5, Real(0), Branch::minus);
    LogReal l2 = cor_q_laguerre(p, 5, Real(2), Branch::minus);
    CHECK(s.logmag() == l0.logmag()); // identical formula, identical digits
    CHECK(s.logmag() == l2.logmag()); // alpha-independent
    CHECK_THROWS_AS(cor_q_laguerre(p, 5, Real(-1), Branch::minus), domain_error);

    // plus-branch brackets carry the chi-shifted cosine argument
    CosBracket b = cor_stieltjes_wigert_bracket(p, 5);
    CHECK(rel_close(b.cos_argument, 11 * (Real("0.15") + Real(5 - 1) / 22),
                    pow(Real(10), -40)));
}

TEST_CASE("lemma theta representations: certificates on the default grid") {
    PrecisionScope scope{Precision(60)};
    Real eps = pow(Real(10), -45);
    QParameter q = QParameter::from_q(Real(1) / 2);
    SeriesSpec empty = SeriesSpec::empty();

    for (long n : {24L, 32L}) {
        for (Real zv : {Real(1) / 2, Real(2)}) {
            ThetaRep rep = lemma_g_theta_rep(empty, q, LogReal::from_value(zv), n, eps);
            CHECK(rep.cert.bound.sign() == 1);
            CHECK(!mag_less(rep.cert.bound, rep.cert.observed)); // observed <= bound
        }
    }

    for (long n : {24L, 32L}) {
        for (Real zv : {Real(1) / 2, Real(2)}) {
            ThetaRep rep = lemma_h_theta_rep(empty, q, LogReal::from_value(zv), n, eps);
            CHECK(!mag_less(rep.cert.bound, rep.cert.observed));
        }
    }

    ConfluentParams params = ConfluentParams::make({}, {Real(1) / 2});
    for (long n : {24L, 32L}) {
        ThetaRep rep = lemma_phi_theta_rep(params, q, LogReal::from_value(Real(2)), n, eps);
        CHECK(!mag_less(rep.cert.bound, rep.cert.observed));
    }

    CHECK_THROWS_AS(lemma_g_theta_rep(empty, q, LogReal::zero(), 8, eps), domain_error);
    CHECK_THROWS_AS(lemma_h_theta_rep(empty, q, LogReal::zero(), 8, eps), domain_error);
}

TEST_CASE("lemma_h parity bookkeeping: sign of (-z)^{floor(n/2)}") {
    PrecisionScope scope{Precision(60)};
    Real eps = pow(Real(10), -45);
    QParameter q = QParameter::from_q(Real(2) / 5);
    SeriesSpec empty = SeriesSpec::empty();
    LogReal z = LogReal::from_value(Real(3) / 2);

    // floor(8/2) = 4 even, floor(10/2) = 5 odd: opposite main-term signs.
    ThetaRep rep8 = lemma_h_theta_rep(empty, q, z, 8, eps);
    ThetaRep rep10 = lemma_h_theta_rep(empty, q, z, 10, eps);
    CHECK(rep8.main.sign() == -rep10.main.sign());
}
