#include "qscale/asymptotics.hpp"

#include "qscale/qpochhammer.hpp"
#include "qscale/theta.hpp"

#include <cmath>
#include <sstream>

namespace qscale {

namespace {

double scale_value(double beta, double gamma, bool log_only, long n) {
    double ln = std::log(static_cast<double>(n));
    return log_only ? std::pow(ln, gamma) : std::pow(static_cast<double>(n), beta) *
                                                std::pow(ln, gamma);
}

} // namespace

AdmissibleScale AdmissibleScale::power(double beta, double gamma) {
    AdmissibleScale s;
    s.kind_ = Kind::power;
    s.beta_ = beta;
    s.gamma_ = gamma;
    std::ostringstream os;
    os << "n^" << beta;
    if (gamma == 1)
        os << "*log";
    else if (gamma != 0)
        os << "*log^" << gamma;
    s.label_ = os.str();
    s.validate();
    return s;
}

AdmissibleScale AdmissibleScale::log_power(double gamma) {
    AdmissibleScale s;
    s.kind_ = Kind::log_power;
    s.gamma_ = gamma;
    std::ostringstream os;
    os << "log^" << gamma;
    s.label_ = os.str();
    s.validate();
    return s;
}

AdmissibleScale AdmissibleScale::table(std::map<long, double> values) {
    AdmissibleScale s;
    s.kind_ = Kind::table;
    s.table_ = std::move(values);
    s.label_ = "table[" + std::to_string(s.table_.size()) + "]";
    s.validate();
    return s;
}

AdmissibleScale AdmissibleScale::parse(const std::string& text) {
    auto parse_exp = [&](const std::string& part, const char* what) {
        try {
            size_t used = 0;
            double v = std::stod(part, &used);
            if (used != part.size())
                throw std::invalid_argument(part);
            return v;
        } catch (const std::exception&) {
            throw config_error(std::string("scale: cannot parse ") + what + " in '" +
                               text + "'");
        }
    };
    if (text.rfind("log", 0) == 0) {
        if (text == "log")
            return log_power(1); // rejected by the validator, deliberately
        if (text.rfind("log^", 0) == 0)
            return log_power(parse_exp(text.substr(4), "gamma"));
        throw config_error("scale: unrecognized form '" + text + "'");
    }
    if (text.rfind("n^", 0) == 0) {
        std::string rest = text.substr(2);
        double gamma = 0;
        size_t star = rest.find('*');
        if (star != std::string::npos) {
            std::string logpart = rest.substr(star + 1);
            rest = rest.substr(0, star);
            if (logpart == "log")
                gamma = 1;
            else if (logpart.rfind("log^", 0) == 0)
                gamma = parse_exp(logpart.substr(4), "gamma");
            else
                throw config_error("scale: unrecognized form '" + text + "'");
        }
        return power(parse_exp(rest, "beta"), gamma);
    }
    throw config_error("scale: unrecognized form '" + text + "'");
}

Real AdmissibleScale::lambda(long n) const {
    if (n < 1)
        throw domain_error("AdmissibleScale: index must be >= 1");
    switch (kind_) {
    case Kind::power:
        return exp(Real(beta_) * log(Real(n)) + Real(gamma_) * log(log(Real(n))));
    case Kind::log_power:
        return exp(Real(gamma_) * log(log(Real(n))));
    case Kind::table: {
        auto it = table_.find(n);
        if (it == table_.end())
            throw config_error("AdmissibleScale: n = " + std::to_string(n) +
                               " missing from the scale table");
        return Real(it->second);
    }
    }
    throw error("AdmissibleScale: bad kind");
}

void AdmissibleScale::validate() const {
    switch (kind_) {
    case Kind::power:
        if (!(beta_ > 0 && beta_ < 0.5))
            throw scale_error("scale " + label_ +
                              ": power family needs 0 < beta < 1/2 for n/lambda^2 -> inf");
        if (gamma_ < 0)
            throw scale_error("scale " + label_ + ": power family needs gamma >= 0");
        break;
    case Kind::log_power:
        if (!(gamma_ > 1))
            throw scale_error("scale " + label_ +
                              ": log family needs gamma > 1 for lambda/log n -> inf");
        break;
    case Kind::table:
        if (table_.size() < 3)
            throw scale_error("scale table: need at least 3 points to probe limits");
        for (const auto& [n, lam] : table_)
            if (n < 1 || !(lam > 0))
                throw scale_error("scale table: entries must have n >= 1, lambda > 0");
        break;
    }

    // Numeric proxy for the two limits of an admissible scale: both ratios
    // must be strictly increasing beyond the probe index.
    constexpr long kProbeIndex = 256;
    double prev_r1 = 0, prev_r2 = 0;
    bool first = true;
    auto check = [&](long n, double lam) {
        double ln = std::log(static_cast<double>(n));
        double r1 = lam / ln;
        double r2 = static_cast<double>(n) / (lam * lam);
        if (!first) {
            if (r1 <= prev_r1)
                throw scale_error("scale " + label_ +
                                  ": lambda_n/log n fails to increase beyond the probe "
                                  "index (n = " + std::to_string(n) + ")");
            if (r2 <= prev_r2)
                throw scale_error("scale " + label_ +
                                  ": n/lambda_n^2 fails to increase beyond the probe "
                                  "index (n = " + std::to_string(n) + ")");
        }
        prev_r1 = r1;
        prev_r2 = r2;
        first = false;
    };
    if (kind_ == Kind::table) {
        for (const auto& [n, lam] : table_)
            if (n >= std::min(kProbeIndex, table_.rbegin()->first / 4))
                check(n, lam);
    } else {
        for (long n = kProbeIndex; n <= (1L << 34); n *= 4)
            check(n, scale_value(beta_, gamma_, kind_ == Kind::log_power, n));
    }
}

ScaledPoint ScaledPoint::make(const AdmissibleScale& scale, long n, const Real& v) {
    return make(n, v, scale.lambda(n));
}

ScaledPoint ScaledPoint::make(long n, const Real& v, const Real& lambda) {
    if (n < 1)
        throw domain_error("ScaledPoint: n must be >= 1");
    return ScaledPoint{n, v, lambda, QParameter(1 / lambda)};
}

namespace {

// exp{(pi lambda/ell)(v + center_num/(center_den*lambda))^2 + extra_log} as a
// positive LogReal; every main term is a variation on this Gaussian.
Real gaussian_log(const ScaledPoint& p, const Real& ell, const Real& center_offset) {
    Real c = p.v + center_offset;
    return pi() * p.lambda / ell * c * c;
}

} // namespace

LogReal g_asym_minus(const SeriesSpec& spec, const ScaledPoint& p) {
    const Real& ell = spec.ell;
    Real lm = gaussian_log(p, ell, 2 * p.n * ell / p.lambda) + log(p.lambda / ell) / 2;
    return LogReal::exp_of(lm);
}

CosBracket g_asym_plus_bracket(const SeriesSpec& spec, const ScaledPoint& p) {
    const Real& ell = spec.ell;
    Real lm = gaussian_log(p, ell, 2 * p.n * ell / p.lambda) - pi() * p.lambda / (4 * ell) +
              ln2() + log(p.lambda / ell) / 2;
    CosBracket b{LogComplex(LogReal::exp_of(lm)), p.lambda * p.v / ell, Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

LogReal g_asym_plus(const SeriesSpec& spec, const ScaledPoint& p) {
    return g_asym_plus_bracket(spec, p).folded().real_signed();
}

namespace {

Real h_common_log(const SeriesSpec& spec, const ScaledPoint& p) {
    const Real& ell = spec.ell;
    const int chi = char_chi(p.n);
    Real center = ell * (p.n - chi) / (2 * p.lambda);
    return gaussian_log(p, ell, center) + ell * pi() * (p.n - 1) * chi / (2 * p.lambda);
}

} // namespace

LogReal h_asym_minus(const SeriesSpec& spec, const ScaledPoint& p) {
    Real lm = h_common_log(spec, p) + log(p.lambda / spec.ell) / 2;
    return LogReal::exp_of(lm);
}

CosBracket h_asym_plus_bracket(const SeriesSpec& spec, const ScaledPoint& p) {
    const Real& ell = spec.ell;
    Real lm = h_common_log(spec, p) - pi() * p.lambda / (4 * ell) + ln2() +
              log(p.lambda / ell) / 2;
    Real arg = p.lambda / ell * (p.v + ell * (p.n - char_chi(p.n)) / (2 * p.lambda));
    CosBracket b{LogComplex(LogReal::exp_of(lm)), arg, Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

LogReal h_asym_plus(const SeriesSpec& spec, const ScaledPoint& p) {
    return h_asym_plus_bracket(spec, p).folded().real_signed();
}

LogReal cor_aq(const ScaledPoint& p, Branch branch) {
    if (branch == Branch::plus)
        return cor_aq_bracket(p).folded().real_signed();
    Real lm = gaussian_log(p, Real(1), Real(2 * p.n) / p.lambda) + pi() * p.lambda / 6 -
              pi() / (24 * p.lambda) - ln2() / 2;
    return LogReal::exp_of(lm);
}

CosBracket cor_aq_bracket(const ScaledPoint& p) {
    Real lm = gaussian_log(p, Real(1), Real(2 * p.n) / p.lambda) - pi() * p.lambda / 12 -
              pi() / (24 * p.lambda) + ln2() / 2;
    CosBracket b{LogComplex(LogReal::exp_of(lm)), p.lambda * p.v, Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

namespace {

Real jackson_common_log(const ScaledPoint& p, const Real& nu) {
    return gaussian_log(p, Real(1), (4 * p.n + nu) / (2 * p.lambda)) -
           pi() / (12 * p.lambda) + nu * nu * pi() / (4 * p.lambda) - log(p.lambda) / 2;
}

} // namespace

LogComplex cor_jackson(const ScaledPoint& p, const Real& nu, Branch branch) {
    if (!(nu > -1))
        throw domain_error("cor_jackson: requires nu > -1");
    if (branch == Branch::plus)
        return cor_jackson_bracket(p, nu).folded();
    // e^{nu pi i/2} is a quarter phase only for integer nu.
    if (floor(nu) != nu)
        throw phase_error("cor_jackson: the i-argument branch needs integer nu");
    Real lm = jackson_common_log(p, nu) + pi() * p.lambda / 3 - ln2();
    return LogComplex::from_polar(static_cast<int>(nu.convert_to<long>() % 4),
                                  LogReal::exp_of(lm));
}

CosBracket cor_jackson_bracket(const ScaledPoint& p, const Real& nu) {
    if (!(nu > -1))
        throw domain_error("cor_jackson: requires nu > -1");
    Real lm = jackson_common_log(p, nu) + pi() * p.lambda / 12;
    CosBracket b{LogComplex(LogReal::exp_of(lm)), p.lambda * p.v, Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

namespace {

Real confluent_common_log(const ConfluentParams& params, const ScaledPoint& p) {
    const Real& ell = params.spec.ell;
    Real rho = params.rho();
    Real acc(0);
    for (const auto& b : params.spec.betas)
        acc += lgamma(b);
    for (const auto& a : params.spec.alphas)
        acc -= lgamma(a);
    acc += (rho + ell + Real(0.5)) * log(p.lambda);
    acc -= log(ell) / 2 + (rho + 2 * ell) * log(pi());
    acc += gaussian_log(p, ell, 2 * p.n * ell / p.lambda) + ell * pi() * p.lambda / 3;
    return acc;
}

} // namespace

LogReal cor_confluent(const ConfluentParams& params, const ScaledPoint& p, Branch branch) {
    if (branch == Branch::plus)
        return cor_confluent_bracket(params, p).folded().real_signed();
    Real lm = confluent_common_log(params, p) - params.spec.ell * ln2();
    return LogReal::exp_of(lm);
}

CosBracket cor_confluent_bracket(const ConfluentParams& params, const ScaledPoint& p) {
    const Real& ell = params.spec.ell;
    Real lm = confluent_common_log(params, p) - (ell - 1) * ln2() -
              pi() * p.lambda / (4 * ell);
    CosBracket b{LogComplex(LogReal::exp_of(lm)), p.lambda * p.v / ell, Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

namespace {

Real ismail_masson_gaussian_log(const ScaledPoint& p, long n) {
    const int chi = char_chi(n);
    Real c = p.v - chi / (2 * p.lambda);
    return pi() * p.lambda * c * c + pi() * Real(n) * n / (4 * p.lambda) -
           pi() * (1 + 12 * chi) / (24 * p.lambda);
}

} // namespace

LogComplex cor_ismail_masson(const ScaledPoint& p, long n, Branch branch) {
    if (branch == Branch::plus)
        return cor_ismail_masson_bracket(p, n).folded();
    // 1/(-i)^n = i^n exactly.
    Real lm = ismail_masson_gaussian_log(p, n) + pi() * p.lambda / 6 - ln2() / 2;
    return LogComplex::from_polar(static_cast<int>(n % 4), LogReal::exp_of(lm));
}

CosBracket cor_ismail_masson_bracket(const ScaledPoint& p, long n) {
    const int chi = char_chi(n);
    Real lm = ismail_masson_gaussian_log(p, n) - pi() * p.lambda / 12 + ln2() / 2;
    // (-1)^n prefactor as an exact phase.
    LogComplex pref = LogComplex::from_polar(static_cast<int>((2 * n) % 4), LogReal::exp_of(lm));
    CosBracket b{pref, p.lambda * (p.v + Real(n - chi) / (2 * p.lambda)), Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

namespace {

Real sw_gaussian_log(const ScaledPoint& p, long n) {
    const int chi = char_chi(n);
    Real c = p.v + Real(n - chi) / (2 * p.lambda);
    return pi() * p.lambda * c * c + pi() * (n - 1) * chi / (2 * p.lambda) -
           pi() / (12 * p.lambda);
}

} // namespace

LogReal cor_stieltjes_wigert(const ScaledPoint& p, long n, Branch branch) {
    if (branch == Branch::plus)
        return cor_stieltjes_wigert_bracket(p, n).folded().real_signed();
    Real lm = sw_gaussian_log(p, n) + pi() * p.lambda / 3 - ln2() - log(p.lambda) / 2;
    return LogReal::exp_of(lm);
}

CosBracket cor_stieltjes_wigert_bracket(const ScaledPoint& p, long n) {
    Real lm = sw_gaussian_log(p, n) + pi() * p.lambda / 12 - log(p.lambda) / 2;
    const int chi = char_chi(n);
    CosBracket b{LogComplex(LogReal::exp_of(lm)),
                 p.lambda * (p.v + Real(n - chi) / (2 * p.lambda)), Real(0)};
    b.cos_value = cos_pi(b.cos_argument);
    return b;
}

LogReal cor_q_laguerre(const ScaledPoint& p, long n, const Real& alpha, Branch branch) {
    if (!(alpha > -1))
        throw domain_error("cor_q_laguerre: requires alpha > -1");
    // The displayed main terms coincide with the Stieltjes-Wigert ones.
    return cor_stieltjes_wigert(p, n, branch);
}

CosBracket cor_q_laguerre_bracket(const ScaledPoint& p, long n, const Real& alpha) {
    if (!(alpha > -1))
        throw domain_error("cor_q_laguerre: requires alpha > -1");
    return cor_stieltjes_wigert_bracket(p, n);
}

namespace {

LogReal theta3_envelope(const LogReal& abs_z_inv, const QParameter& q_ell, const Real& eps) {
    return theta_auto(3, NomeForm(abs_z_inv, q_ell), eps).magnitude();
}

} // namespace

ThetaRep lemma_g_theta_rep(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
                           long n, const Real& eps) {
    spec.validate();
    if (z.is_zero())
        throw domain_error("lemma_g_theta_rep: z must be nonzero");
    if (z.sign() < 0)
        throw domain_error("lemma_g_theta_rep: only positive z is supported "
                           "(theta arguments must stay positive)");
    const Real& ell = spec.ell;
    QParameter q_ell = q.raised(ell);

    LogReal scale = z.pow_int(2 * n) * LogReal::exp_of(-4 * Real(n) * n * ell * q.log_q());
    LogReal theta4 = theta_auto(4, NomeForm(LogReal::one() / z, q_ell), eps).real_signed();
    LogReal main = scale * theta4;

    LogReal exact = g_eval(spec, q, LogReal::exp_of(-4 * n * ell * q.log_q()) * z, eps);
    LogReal observed = (exact / scale - theta4).abs();

    // 2^{s+r+3} theta3(|z|^{-1}; q^ell)/(a;q)_inf {q^{n+1}/(1-q) + q^{ell n^2}/|z|^n}
    Real log_pref = (spec.alphas.size() + spec.betas.size() + 3) * ln2();
    LogReal pref = LogReal::exp_of(log_pref) * theta3_envelope(z.abs().pow_int(-1), q_ell, eps);
    for (const auto& a : spec.alphas)
        pref /= qpoch_infinite(q.power(a), q, eps).value;
    LogReal summand1 = LogReal::exp_of((n + 1) * q.log_q() - q.log_one_minus_q());
    LogReal summand2 = LogReal::exp_of(ell * Real(n) * n * q.log_q() - n * z.logmag());
    LogReal bound = pref.abs() * (summand1 + summand2);

    return {main, {bound, observed, n}};
}

ThetaRep lemma_phi_theta_rep(const ConfluentParams& params, const QParameter& q,
                             const LogReal& z, long n, const Real& eps) {
    if (z.is_zero() || z.sign() < 0)
        throw domain_error("lemma_phi_theta_rep: z must be positive");
    const SeriesSpec& spec = params.spec;
    const Real& ell = spec.ell;
    QParameter q_ell = q.raised(ell);

    // (a;q)_inf z^{2n} / ((q, b;q)_inf q^{2 ell n(2n+1)})
    LogReal scale = z.pow_int(2 * n) *
                    LogReal::exp_of(-2 * ell * Real(n) * (2 * n + 1) * q.log_q());
    for (const auto& a : spec.alphas)
        scale *= qpoch_infinite(q.power(a), q, eps).value;
    scale /= qpoch_infinite(q.power(Real(1)), q, eps).value;
    for (const auto& b : spec.betas)
        scale /= qpoch_infinite(q.power(b), q, eps).value;

    LogReal theta4 =
        theta_auto(4, NomeForm(q.power(ell) / z, q_ell), eps).real_signed();
    LogReal main = scale * theta4;

    // Exact side: argument (-1)^{s-r} z q^{-4 n ell}.
    LogReal arg = LogReal::exp_of(-4 * n * ell * q.log_q()) * z;
    if ((params.s() - params.r()) % 2 != 0)
        arg = -arg;
    LogReal exact = rphis_eval(params, q, arg, eps);
    LogReal observed = (exact / scale - theta4).abs();

    Real log_pref = (spec.alphas.size() + spec.betas.size() + 3) * ln2();
    LogReal pref = LogReal::exp_of(log_pref) *
                   theta3_envelope(q.power(ell) / z.abs(), q_ell, eps);
    for (const auto& a : spec.alphas)
        pref /= qpoch_infinite(q.power(a), q, eps).value;
    LogReal summand1 = LogReal::exp_of((n + 1) * q.log_q() - q.log_one_minus_q());
    LogReal summand2 =
        LogReal::exp_of((ell * Real(n) * n + ell * n) * q.log_q() - n * z.logmag());
    LogReal bound = pref.abs() * (summand1 + summand2);

    return {main, {bound, observed, n}};
}

ThetaRep lemma_h_theta_rep(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
                           long n, const Real& eps) {
    spec.validate();
    if (z.is_zero() || z.sign() < 0)
        throw domain_error("lemma_h_theta_rep: z must be positive");
    const Real& ell = spec.ell;
    const int chi = char_chi(n);
    QParameter q_ell = q.raised(ell);

    LogReal scale = z.pow_int(n / 2) *
                    LogReal::exp_of(-ell * (Real(n) * n - chi) / 4 * q.log_q());
    if ((n / 2) % 2 != 0)
        scale = -scale; // (-z)^{floor(n/2)} for z > 0
    LogReal theta4 = theta_auto(4, NomeForm(LogReal::one() / z, q_ell), eps).real_signed();
    LogReal main = scale * theta4;

    LogReal exact = h_eval(spec, q, n, LogReal::exp_of(-n * ell * q.log_q()) * z, eps);
    LogReal observed = (exact / scale - theta4).abs();

    const long n4 = n / 4;
    Real log_pref =
        (spec.alphas.size() + spec.betas.size() + 2 * spec.gammas.size() + 5) * ln2();
    LogReal pref = LogReal::exp_of(log_pref) * theta3_envelope(z.abs().pow_int(-1), q_ell, eps);
    for (const auto& a : spec.alphas)
        pref /= qpoch_infinite(q.power(a), q, eps).value;
    LogReal s1 = LogReal::exp_of((n4 + 1) * q.log_q() - q.log_one_minus_q());
    LogReal s2 = LogReal::exp_of(ell * Real(n4) * n4 * q.log_q() + n4 * z.logmag());
    LogReal s3 = LogReal::exp_of(ell * Real(n4) * n4 * q.log_q() - n4 * z.logmag());
    LogReal bound = pref.abs() * (s1 + s2 + s3);

    return {main, {bound, observed, n}};
}

} // namespace qscale
