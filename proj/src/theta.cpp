#include "qscale/theta.hpp"

#include "qscale/qpochhammer.hpp"

#include <vector>

namespace qscale {

namespace {

constexpr long kMaxThetaTerms = 10'000'000;

// Integer or half-integer series index depending on theta index.
bool half_integer_index(int index) { return index == 1 || index == 2; }

// Real-axis series: all four thetas reduce to sums of
//   weight(k) * q^{m^2} * trig((...)*pi*v),  m = k or k+1/2,
// after pairing k with -k (resp. -k-1). The trig factor is bounded by 1, so
// the envelope is q^{m^2} alone and strictly decreasing.
// Certified window half-width for a q^{m^2}-enveloped series.
Real gaussian_width(const Real& L, const Real& eps_eff) {
    return sqrt((log(1 / eps_eff) + 20) / -L) + 2;
}

LogComplex series_real_axis(const ThetaPoint& p, const Real& eps) {
    const Real L = -pi() * p.tau_im; // log nome
    const Real eps_eff = eps / 4;
    if (gaussian_width(L, eps_eff) > Real(kMaxThetaTerms))
        throw regime_error("theta_series: certified window exceeds term cap; "
                           "tau_im too small for direct summation");

    std::vector<LogReal> terms;
    Real max_abs;
    bool have_max = false;

    auto term_at = [&](long k) -> LogReal {
        switch (p.index) {
        case 1: {
            Real trig = sin_pi((2 * k + 1) * p.v);
            Real lm = (k + Real(0.5)) * (k + Real(0.5)) * L + ln2();
            LogReal t = LogReal::from_value(trig);
            if (k % 2 != 0)
                t = -t;
            return t * LogReal::exp_of(lm);
        }
        case 2: {
            Real trig = cos_pi((2 * k + 1) * p.v);
            Real lm = (k + Real(0.5)) * (k + Real(0.5)) * L + ln2();
            return LogReal::from_value(trig) * LogReal::exp_of(lm);
        }
        case 3:
        case 4: {
            if (k == 0)
                return LogReal::one();
            Real trig = cos_pi(2 * k * p.v);
            Real lm = Real(k) * k * L + ln2();
            LogReal t = LogReal::from_value(trig) * LogReal::exp_of(lm);
            if (p.index == 4 && k % 2 != 0)
                t = -t;
            return t;
        }
        default:
            throw domain_error("theta: index must be 1..4");
        }
    };

    auto envelope_log = [&](long k) {
        Real m = half_integer_index(p.index) ? Real(k) + Real(0.5) : Real(k);
        return m * m * L + ln2();
    };

    for (long k = 0;; ++k) {
        if (k > kMaxThetaTerms)
            throw regime_error("theta_series: certified window exceeds term cap; "
                               "tau_im too small for direct summation");
        LogReal t = term_at(k);
        if (!t.is_zero()) {
            terms.push_back(t);
            if (!have_max || max_abs < t.logmag()) {
                max_abs = t.logmag();
                have_max = true;
            }
        }
        // Geometric bound on everything past k: ratio of consecutive
        // envelopes is exp((2m+2) L) < 1 (m = k or k+1/2).
        if (k >= 1) {
            Real env_next = envelope_log(k + 1);
            Real ratio_log = envelope_log(k + 2) - env_next; // < 0
            Real tail_log = env_next - log(-expm1(ratio_log));
            if (!have_max) {
                // All trig factors so far vanished exactly; that only happens
                // for structurally zero values (theta1 at integer v, theta2 at
                // half-integer v), where every later term vanishes too.
                return LogComplex::zero();
            }
            if (tail_log <= max_abs + log(eps_eff))
                break;
        }
    }
    return LogComplex(log_sum(std::move(terms)).value);
}

// Imaginary-axis series: argument i*vhat, every term is a pure exponential
//   sign(k) * exp(m^2 L - 2 pi m vhat),  m = k or k+1/2,
// peaked at m* = -vhat/tau_im. Sum outward from the peak on both sides.
LogComplex series_imaginary_axis(const ThetaPoint& p, const Real& eps) {
    const Real L = -pi() * p.tau_im;
    const Real eps_eff = eps / 4;
    const bool half = half_integer_index(p.index);
    const Real shift = half ? Real(0.5) : Real(0);

    Real m_star = -p.v / p.tau_im;
    if (abs(m_star) + gaussian_width(L, eps_eff) > Real(kMaxThetaTerms) / 2)
        throw regime_error("theta_series: certified window exceeds term cap; "
                           "argument/nome need the modular transformation");
    long k_center = static_cast<long>((m_star - shift).convert_to<long>());

    auto log_term = [&](long k) {
        Real m = Real(k) + shift;
        return m * m * L - 2 * pi() * m * p.v;
    };
    auto sign_of = [&](long k) -> int {
        bool flip = (p.index == 1 || p.index == 4) && (k % 2 != 0);
        return flip ? -1 : +1;
    };

    std::vector<LogReal> terms;
    Real max_abs = log_term(k_center);

    auto push = [&](long k) {
        Real lm = log_term(k);
        if (max_abs < lm)
            max_abs = lm;
        terms.push_back(LogReal::from_log(sign_of(k), lm));
    };

    // Walk one side until the geometric tail past the last term certifies
    // below eps * max. On each side the envelope ratio is monotone < 1.
    auto walk = [&](long from, long step) {
        long k = from;
        for (;;) {
            if (std::abs(k - k_center) > kMaxThetaTerms)
                throw regime_error("theta_series: certified window exceeds term cap");
            push(k);
            Real next_log = log_term(k + step);
            Real ratio_log = log_term(k + 2 * step) - next_log;
            if (ratio_log < 0) {
                Real tail_log = next_log - log(-expm1(ratio_log));
                if (tail_log <= max_abs + log(eps_eff))
                    break;
            }
            k += step;
        }
    };

    walk(k_center, +1);
    walk(k_center - 1, -1);

    LogReal sum = log_sum(std::move(terms)).value;
    if (p.index == 1)
        return LogComplex::from_polar(3, sum); // the -i prefactor
    return LogComplex(sum);
}

// prod_{k>=0} (1 - 2 c x_k + x_k^2), x_k = exp(logx0 + k logstep), 0 < x_k < 1,
// |c| <= 1. Every factor is (x-c)^2 + (1-c^2) > 0, so the product is positive
// and the log-factors are bounded by 6 x_k, giving a geometric tail
// certificate.
LogReal paired_product(const Real& c, const Real& logx0, const Real& logstep,
                       const Real& eps) {
    Real budget = log(eps / 2) + log(-expm1(logstep)) - log(Real(12));
    Real need = (budget - logx0) / logstep; // logstep < 0
    long n = 0;
    if (need > 0) {
        if (need > Real(kMaxPochTerms))
            throw scale_error("theta_product: certified truncation too long");
        n = need.convert_to<long>() + 1;
    }
    Real acc(0);
    Real lx = logx0;
    for (long k = 0; k < n; ++k) {
        Real x = exp(lx);
        acc += log1p(x * (x - 2 * c));
        lx += logstep;
    }
    return LogReal::exp_of(acc);
}

} // namespace

ThetaPoint::ThetaPoint(int index_, ThetaAxis axis_, Real v_, Real tau_im_)
    : index(index_), axis(axis_), v(std::move(v_)), tau_im(std::move(tau_im_)) {
    if (index < 1 || index > 4)
        throw domain_error("ThetaPoint: index must be in {1,2,3,4}");
    if (!(tau_im > 0))
        throw domain_error("ThetaPoint: tau must have positive imaginary part");
}

NomeForm::NomeForm(LogReal z_, QParameter q_) : z(std::move(z_)), q(std::move(q_)) {
    if (z.sign() <= 0)
        throw domain_error("NomeForm: multiplicative argument must be positive");
}

ThetaPoint nome_point(int index, const NomeForm& nf) {
    // z = e^{-2 pi vhat}
    return ThetaPoint(index, ThetaAxis::imaginary, -nf.z.logmag() / (2 * pi()), nf.q.t());
}

LogComplex theta_series(const ThetaPoint& p, const Real& eps) {
    if (!(eps > 0))
        throw domain_error("theta_series: tolerance must be positive");
    return p.axis == ThetaAxis::real ? series_real_axis(p, eps)
                                     : series_imaginary_axis(p, eps);
}

LogComplex theta_product(const ThetaPoint& p, const Real& eps) {
    if (!(eps > 0))
        throw domain_error("theta_product: tolerance must be positive");
    const Real L = -pi() * p.tau_im; // log nome
    const Real eps4 = eps / 4;
    const QParameter q2(2 * p.tau_im); // base q^2

    LogReal e_factor = qpoch_infinite(LogReal::exp_of(2 * L), q2, eps4).value;

    if (p.axis == ThetaAxis::real) {
        Real c2v = cos_pi(2 * p.v);
        switch (p.index) {
        case 1: {
            LogReal pre = LogReal::from_value(sin_pi(p.v)) * LogReal::exp_of(L / 4 + ln2());
            return LogComplex(pre * e_factor * paired_product(c2v, 2 * L, 2 * L, eps4));
        }
        case 2: {
            LogReal pre = LogReal::from_value(cos_pi(p.v)) * LogReal::exp_of(L / 4 + ln2());
            return LogComplex(pre * e_factor * paired_product(-c2v, 2 * L, 2 * L, eps4));
        }
        case 3:
            return LogComplex(e_factor * paired_product(-c2v, L, 2 * L, eps4));
        case 4:
            return LogComplex(e_factor * paired_product(c2v, L, 2 * L, eps4));
        default:
            throw domain_error("theta: index must be 1..4");
        }
    }

    // Imaginary axis: multiplicative arguments e^{+-2 pi vhat} are real, the
    // triple product is three plain q-Pochhammers.
    const Real w = 2 * pi() * p.v; // z = e^{-w}
    auto poch2 = [&](int sign, const Real& logmag) {
        return qpoch_infinite(LogReal::from_log(sign, logmag), q2, eps4).value;
    };
    switch (p.index) {
    case 1: {
        LogReal pre =
            LogReal::from_value(sinh(pi() * p.v)) * LogReal::exp_of(L / 4 + ln2());
        LogReal prod = e_factor * poch2(+1, 2 * L - w) * poch2(+1, 2 * L + w);
        return LogComplex::from_polar(1, pre * prod); // i * sinh
    }
    case 2: {
        LogReal pre =
            LogReal::from_value(cosh(pi() * p.v)) * LogReal::exp_of(L / 4 + ln2());
        LogReal prod = e_factor * poch2(-1, 2 * L - w) * poch2(-1, 2 * L + w);
        return LogComplex(pre * prod);
    }
    case 3:
        return LogComplex(e_factor * poch2(-1, L - w) * poch2(-1, L + w));
    case 4:
        return LogComplex(e_factor * poch2(+1, L - w) * poch2(+1, L + w));
    default:
        throw domain_error("theta: index must be 1..4");
    }
}

ThetaTransform theta_transform(const ThetaPoint& p) {
    static const int image_index[5] = {0, 1, 4, 3, 2};
    const Real& s = p.tau_im;

    ThetaTransform out{ThetaPoint(image_index[p.index],
                                  p.axis == ThetaAxis::real ? ThetaAxis::imaginary
                                                            : ThetaAxis::real,
                                  p.axis == ThetaAxis::real ? Real(-p.v / s) : Real(p.v / s),
                                  1 / s),
                       LogComplex::one()};

    // Table factor sqrt(tau/i) e^{pi i v^2 / tau} at the input point; for
    // v = i vhat the exponential flips sign.
    Real f_log = log(s) / 2 +
                 (p.axis == ThetaAxis::real ? pi() * p.v * p.v / s : -pi() * p.v * p.v / s);
    out.multiplier = LogComplex::from_polar(p.index == 1 ? 3 : 0, LogReal::exp_of(f_log));
    return out;
}

LogComplex theta_auto(const ThetaPoint& p, const Real& eps) {
    if (p.tau_im >= 1)
        return theta_series(p, eps);
    ThetaTransform tr = theta_transform(p);
    return theta_series(tr.image, eps) / tr.multiplier;
}

LogComplex theta_auto(int index, const NomeForm& nf, const Real& eps) {
    return theta_auto(nome_point(index, nf), eps);
}

} // namespace qscale
