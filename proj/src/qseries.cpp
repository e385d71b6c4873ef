#include "qscale/qseries.hpp"

#include "qscale/qpochhammer.hpp"

#include <algorithm>
#include <utility>

namespace qscale {

namespace {

// 1 - exp(logx) for logx < 0, as a plain Real log. Factors of the
// incremental Pochhammer walkers are always in (0,1) here because the
// series parameters are q^{positive exponent}.
Real log_one_minus_exp(const Real& logx) {
    return log(-expm1(logx));
}

// Walks (x q^k;q)_inf upward in k via (x q^{k+1};q)_inf = (x q^k;q)_inf / (1 - x q^k).
class PochWalker {
public:
    PochWalker(Real log_x, const QParameter& q, long k_start, const Real& eps)
        : log_x_(std::move(log_x)), log_q_(q.log_q()), k_(k_start) {
        value_ = qpoch_infinite(LogReal::exp_of(log_x_ + k_start * log_q_), q, eps).value;
    }

    const LogReal& value() const { return value_; }

    void advance() {
        value_ /= LogReal::exp_of(log_one_minus_exp(log_x_ + k_ * log_q_));
        ++k_;
    }

private:
    Real log_x_;
    Real log_q_;
    long k_;
    LogReal value_;
};

// log of sum_{j>=1} exp(first_log) * r^j-style geometric tail where
// ratio_log = log r < 0.
Real geom_tail_log(const Real& first_log, const Real& ratio_log) {
    return first_log - log(-expm1(ratio_log));
}

// Shared frame for the certified Gaussian-window sums: series with terms
// |t_k| <= A_max * exp(env(k)), env(k) = w k^2 log q + k log|arg|, peaked at
// k* = -log|arg| / (2 w log q). The window is grown until the geometric
// envelope tails on both sides certify below eps relative to the largest
// *computed* term (which is at least A_lo * exp(env(k_peak))).
struct GaussianWindow {
    long k_lo = 0;
    long k_hi = 0;
};

GaussianWindow plan_window(const Real& w_logq, const Real& log_arg, const Real& eps,
                           const Real& log_a_ratio) {
    // w_logq = ell * log q < 0.
    Real k_star = -log_arg / (2 * w_logq);
    Real slack = log(1 / eps) + log_a_ratio + log(Real(16));
    if (slack < 1)
        slack = Real(1);
    Real wr = sqrt(slack / -w_logq) + 2;
    if (k_star > Real(2 * kMaxPochTerms) || wr > Real(kMaxPochTerms))
        throw scale_error("series window exceeds the supported term cap; "
                          "raise lambda or lower n");

    GaussianWindow win;
    Real lo = floor(k_star) - ceil(wr);
    win.k_lo = lo > 0 ? lo.convert_to<long>() : 0;
    Real hi = ceil(k_star) + ceil(wr);
    win.k_hi = hi > 0 ? hi.convert_to<long>() : 0;
    if (win.k_hi - win.k_lo > 2 * kMaxPochTerms)
        throw scale_error("series window exceeds the supported term cap");
    return win;
}

// Envelope-based tail certificates for a computed window; returns false when
// the window must be widened.
bool tails_certified(const Real& w_logq, const Real& log_arg, const GaussianWindow& win,
                     const Real& log_a_max, const Real& max_term_logmag, const Real& eps) {
    auto env = [&](long k) { return w_logq * k * k + k * log_arg; };
    Real budget = max_term_logmag + log(eps / 2);

    // Upper tail from k_hi + 1: consecutive envelope ratio exp(w(2k+1)logq + log_arg)
    // must contract; it does strictly past the peak.
    Real up_first = env(win.k_hi + 1);
    Real up_ratio = env(win.k_hi + 2) - up_first;
    if (!(up_ratio < 0))
        return false;
    if (log_a_max + geom_tail_log(up_first, up_ratio) > budget)
        return false;

    if (win.k_lo > 0) {
        Real lo_first = env(win.k_lo - 1);
        Real lo_ratio = win.k_lo >= 2 ? Real(env(win.k_lo - 2) - lo_first) : Real(-1);
        if (!(lo_ratio < 0))
            return false;
        if (log_a_max + geom_tail_log(lo_first, lo_ratio) > budget)
            return false;
    }
    return true;
}

SeriesValue finish(std::vector<LogReal> terms) {
    SumTrace trace = log_sum(std::move(terms));
    return {LogComplex(trace.value), trace.peak_logmag, trace.terms};
}

LogReal real_part_checked(const SeriesValue& sv, const char* who) {
    if (!sv.value.is_zero() && !sv.value.on_real_axis())
        throw phase_error(std::string(who) + ": value left the real axis");
    return sv.value.real_signed();
}

} // namespace

void SeriesSpec::validate() const {
    for (const auto& a : alphas)
        if (!(a > 0))
            throw domain_error("SeriesSpec: alpha exponents must be positive");
    for (const auto& b : betas)
        if (!(b > 0))
            throw domain_error("SeriesSpec: beta exponents must be positive");
    for (const auto& c : gammas)
        if (!(c > 0))
            throw domain_error("SeriesSpec: gamma exponents must be positive");
    if (!(ell > 0))
        throw domain_error("SeriesSpec: ell must be positive");
}

ConfluentParams ConfluentParams::make(std::vector<Real> alphas, std::vector<Real> betas) {
    ConfluentParams p;
    p.spec.alphas = std::move(alphas);
    p.spec.betas = std::move(betas);
    int two_ell = static_cast<int>(p.spec.betas.size()) + 1 -
                  static_cast<int>(p.spec.alphas.size());
    if (two_ell <= 0)
        throw unsupported_error("ConfluentParams: series is not confluent "
                                "(needs s + 1 - r > 0)");
    p.spec.ell = Real(two_ell) / 2;
    p.spec.validate();
    return p;
}

Real ConfluentParams::rho() const {
    Real acc(-1);
    for (const auto& a : spec.alphas)
        acc += a;
    for (const auto& b : spec.betas)
        acc -= b;
    return acc;
}

int char_chi(long n) {
    return static_cast<int>(((n % 2) + 2) % 2);
}

SeriesValue g_eval_traced(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
                          const Real& eps) {
    spec.validate();
    if (!(eps > 0))
        throw domain_error("g_eval: tolerance must be positive");
    const Real L = q.log_q();
    const Real wL = spec.ell * L;
    const size_t n_poch = 1 + spec.betas.size() + spec.alphas.size();
    const Real eps_p = eps / Real(16 * n_poch);

    // Uniform Pochhammer-quotient bounds: numerator factors are <= 1 and
    // >= their k = 0 values, denominators are >= (a_j;q)_inf and <= 1.
    Real log_a_max(0), log_a_lo(0);
    for (const auto& a : spec.alphas)
        log_a_max -= qpoch_infinite(q.power(a), q, eps_p).value.logmag();
    log_a_lo += qpoch_infinite(q.power(Real(1)), q, eps_p).value.logmag();
    for (const auto& b : spec.betas)
        log_a_lo += qpoch_infinite(q.power(b), q, eps_p).value.logmag();

    if (z.is_zero()) {
        // Only the k = 0 term survives.
        LogReal t = qpoch_infinite(q.power(Real(1)), q, eps_p).value;
        for (const auto& b : spec.betas)
            t *= qpoch_infinite(q.power(b), q, eps_p).value;
        for (const auto& a : spec.alphas)
            t /= qpoch_infinite(q.power(a), q, eps_p).value;
        return {LogComplex(t), t.logmag(), 1};
    }

    for (int attempt = 0;; ++attempt) {
        Real widen = pow(Real(4), attempt);
        GaussianWindow win =
            plan_window(wL, z.logmag(), eps / widen, log_a_max - log_a_lo);

        PochWalker num_q(L, q, win.k_lo, eps_p); // head factor q^{k+1} via log_x = L
        std::vector<PochWalker> num_b, den_a;
        num_b.reserve(spec.betas.size());
        den_a.reserve(spec.alphas.size());
        for (const auto& b : spec.betas)
            num_b.emplace_back(b * L, q, win.k_lo, eps_p);
        for (const auto& a : spec.alphas)
            den_a.emplace_back(a * L, q, win.k_lo, eps_p);

        std::vector<LogReal> terms;
        terms.reserve(static_cast<size_t>(win.k_hi - win.k_lo + 1));
        Real max_term;
        bool have_max = false;
        for (long k = win.k_lo;; ++k) {
            LogReal poch = num_q.value();
            for (const auto& w : num_b)
                poch *= w.value();
            for (const auto& w : den_a)
                poch /= w.value();
            LogReal t = poch * LogReal::exp_of(wL * k * k) * (-z).pow_int(k);
            if (!t.is_zero()) {
                if (!have_max || max_term < t.logmag()) {
                    max_term = t.logmag();
                    have_max = true;
                }
                terms.push_back(std::move(t));
            }
            if (k == win.k_hi)
                break;
            num_q.advance();
            for (auto& w : num_b)
                w.advance();
            for (auto& w : den_a)
                w.advance();
        }
        if (have_max &&
            tails_certified(wL, z.logmag(), win, log_a_max, max_term, eps)) {
            return finish(std::move(terms));
        }
        if (attempt >= 3)
            throw scale_error("g_eval: could not certify the truncation window");
    }
}

LogReal g_eval(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
               const Real& eps) {
    return real_part_checked(g_eval_traced(spec, q, z, eps), "g_eval");
}

SeriesValue h_eval_traced(const SeriesSpec& spec, const QParameter& q, long n,
                          const LogReal& z, const Real& eps) {
    spec.validate();
    if (n < 0)
        throw domain_error("h_eval: degree must be nonnegative");
    if (!(eps > 0))
        throw domain_error("h_eval: tolerance must be positive");
    const Real L = q.log_q();
    const Real wL = spec.ell * L;
    const Real eps_p = eps / Real(4 * (n + 1));

    PochWalker num_q(L, q, 0, eps_p); // head factor q^{k+1} via log_x = L
    std::vector<PochWalker> num_b, den_a;
    for (const auto& b : spec.betas)
        num_b.emplace_back(b * L, q, 0, eps_p);
    for (const auto& a : spec.alphas)
        den_a.emplace_back(a * L, q, 0, eps_p);

    // Window-product exponents for (q, c_1..c_t;q)_n / (...)_{n-k}.
    std::vector<Real> ratio_logx;
    ratio_logx.push_back(L);
    for (const auto& c : spec.gammas)
        ratio_logx.push_back(c * L);
    LogReal ratio = LogReal::one(); // k = 0

    std::vector<LogReal> terms;
    terms.reserve(static_cast<size_t>(n + 1));
    for (long k = 0; k <= n; ++k) {
        LogReal poch = num_q.value();
        for (const auto& w : num_b)
            poch *= w.value();
        for (const auto& w : den_a)
            poch /= w.value();
        terms.push_back(poch * LogReal::exp_of(wL * k * k) * (-z).pow_int(k) * ratio);
        if (k == n)
            break;
        num_q.advance();
        for (auto& w : num_b)
            w.advance();
        for (auto& w : den_a)
            w.advance();
        for (const auto& lx : ratio_logx)
            ratio *= LogReal::exp_of(log_one_minus_exp(lx + (n - k - 1) * L));
    }
    SeriesValue out = finish(std::move(terms));
    out.terms = n + 1; // exact term count contract, zeros included
    return out;
}

LogReal h_eval(const SeriesSpec& spec, const QParameter& q, long n, const LogReal& z,
               const Real& eps) {
    return real_part_checked(h_eval_traced(spec, q, n, z, eps), "h_eval");
}

SeriesValue ramanujan_aq_traced(const LogReal& z, const QParameter& q, const Real& eps) {
    if (!(eps > 0))
        throw domain_error("ramanujan_aq: tolerance must be positive");
    const Real L = q.log_q();
    if (z.is_zero())
        return {LogComplex::one(), Real(0), 1};

    Real log_qq_inf = qpoch_infinite(q.power(Real(1)), q, eps / 8).value.logmag();
    for (int attempt = 0;; ++attempt) {
        Real widen = pow(Real(4), attempt);
        GaussianWindow win = plan_window(L, z.logmag(), eps / widen, -log_qq_inf);

        // (q;q)_k at the window start, then incremental.
        LogReal qq_k = qpoch_finite(q.power(Real(1)), q, win.k_lo);
        std::vector<LogReal> terms;
        Real max_term;
        bool have_max = false;
        for (long k = win.k_lo;; ++k) {
            LogReal t = LogReal::exp_of(L * k * k) * (-z).pow_int(k) / qq_k;
            if (!have_max || max_term < t.logmag()) {
                max_term = t.logmag();
                have_max = true;
            }
            terms.push_back(std::move(t));
            if (k == win.k_hi)
                break;
            qq_k *= LogReal::exp_of(log_one_minus_exp((k + 1) * L));
        }
        if (tails_certified(L, z.logmag(), win, -log_qq_inf, max_term, eps))
            return finish(std::move(terms));
        if (attempt >= 3)
            throw scale_error("ramanujan_aq: could not certify the truncation window");
    }
}

LogReal ramanujan_aq(const LogReal& z, const QParameter& q, const Real& eps) {
    return real_part_checked(ramanujan_aq_traced(z, q, eps), "ramanujan_aq");
}

SeriesValue jackson_j2_traced(const LogComplex& z, const Real& nu, const QParameter& q,
                              const Real& eps) {
    if (!(nu > -1))
        throw domain_error("jackson_j2: requires nu > -1");
    if (!(eps > 0))
        throw domain_error("jackson_j2: tolerance must be positive");
    const Real L = q.log_q();
    const Real eps_p = eps / 16;

    bool nu_integer = (floor(nu) == nu);
    if (!z.on_real_axis() && !nu_integer)
        throw phase_error("jackson_j2: off-axis argument needs integer nu "
                          "for (z/2)^nu to stay on a quarter-phase axis");

    LogComplex half_z = z / LogComplex(LogReal::from_value(Real(2)));
    LogComplex prefactor;
    if (half_z.is_zero()) {
        if (nu == 0)
            prefactor = LogComplex::one();
        else
            return {LogComplex::zero(), Real(0), 0}; // (z/2)^nu kills everything
    } else if (nu_integer) {
        prefactor = half_z.pow_int(nu.convert_to<long>());
    } else {
        // real axis; require positive base for a real power
        prefactor = LogComplex(half_z.real_signed().pow(nu));
    }
    prefactor *= LogComplex(qpoch_infinite(q.power(nu + 1), q, eps_p).value /
                            qpoch_infinite(q.power(Real(1)), q, eps_p).value);
    if (prefactor.is_zero())
        return {LogComplex::zero(), Real(0), 0};

    // Sum over k of q^{k^2 + k nu} (-1)^k (z/2)^{2k} / ((q;q)_k (q^{nu+1};q)_k).
    LogComplex z2 = half_z.pow_int(2);    // phase 0 or 2
    LogReal z2_real = z2.real_signed();   // signed real
    if (z2.is_zero())
        return {prefactor, prefactor.magnitude().logmag(), 1}; // k = 0 term only

    Real log_arg = z2_real.logmag() + nu * L; // envelope argument weight
    Real log_den_floor = qpoch_infinite(q.power(Real(1)), q, eps_p).value.logmag() +
                         qpoch_infinite(q.power(nu + 1), q, eps_p).value.logmag();

    for (int attempt = 0;; ++attempt) {
        Real widen = pow(Real(4), attempt);
        GaussianWindow win = plan_window(L, log_arg, eps / widen, -log_den_floor);

        LogReal qq_k = qpoch_finite(q.power(Real(1)), q, win.k_lo);
        LogReal qn_k = qpoch_finite(q.power(nu + 1), q, win.k_lo);
        std::vector<LogReal> terms;
        Real max_term;
        bool have_max = false;
        for (long k = win.k_lo;; ++k) {
            LogReal t = LogReal::exp_of(L * (Real(k) * k + k * nu)) *
                        (-z2_real).pow_int(k) / (qq_k * qn_k);
            if (!have_max || max_term < t.logmag()) {
                max_term = t.logmag();
                have_max = true;
            }
            terms.push_back(std::move(t));
            if (k == win.k_hi)
                break;
            qq_k *= LogReal::exp_of(log_one_minus_exp((k + 1) * L));
            qn_k *= LogReal::exp_of(log_one_minus_exp((nu + 1 + k) * L));
        }
        if (tails_certified(L, log_arg, win, -log_den_floor, max_term, eps)) {
            SumTrace trace = log_sum(std::move(terms));
            LogComplex value = prefactor * LogComplex(trace.value);
            return {value, trace.peak_logmag + prefactor.magnitude().logmag(),
                    trace.terms};
        }
        if (attempt >= 3)
            throw scale_error("jackson_j2: could not certify the truncation window");
    }
}

LogComplex jackson_j2(const LogComplex& z, const Real& nu, const QParameter& q,
                      const Real& eps) {
    return jackson_j2_traced(z, nu, q, eps).value;
}

SeriesValue ismail_masson_h_traced(long n, const LogComplex& xi_exp, const QParameter& q) {
    if (n < 0)
        throw domain_error("ismail_masson_h: degree must be nonnegative");
    if (xi_exp.is_zero())
        throw domain_error("ismail_masson_h: e^{xi} must be nonzero");
    const Real L = q.log_q();

    // (q;q)_j for j = 0..n.
    std::vector<LogReal> qq(static_cast<size_t>(n) + 1);
    qq[0] = LogReal::one();
    for (long j = 1; j <= n; ++j)
        qq[static_cast<size_t>(j)] =
            qq[static_cast<size_t>(j - 1)] * LogReal::exp_of(log_one_minus_exp(j * L));

    std::vector<LogComplex> terms;
    terms.reserve(static_cast<size_t>(n) + 1);
    Real peak;
    long count = 0;
    for (long k = 0; k <= n; ++k) {
        LogComplex t = xi_exp.pow_int(n - 2 * k);
        LogReal w = qq[static_cast<size_t>(n)] * LogReal::exp_of(L * k * (k - n)) /
                    (qq[static_cast<size_t>(k)] * qq[static_cast<size_t>(n - k)]);
        if (k % 2 != 0)
            w = -w;
        t *= LogComplex(w);
        if (count == 0 || peak < t.magnitude().logmag())
            peak = t.magnitude().logmag();
        ++count;
        terms.push_back(std::move(t));
    }

    // All terms share an axis (phase i^{n-2k} times (-1)^k is constant mod 2),
    // so fold them through the signed log-domain sum on that axis.
    int axis_quarter = terms.front().quarter() % 2;
    std::vector<LogReal> on_axis;
    on_axis.reserve(terms.size());
    for (const auto& t : terms) {
        if (t.is_zero())
            continue;
        on_axis.push_back(t.quarter() < 2 ? t.magnitude() : -t.magnitude());
    }
    SumTrace trace = log_sum(std::move(on_axis));
    LogComplex value = LogComplex(trace.value);
    if (axis_quarter == 1)
        value = value.rotated(1);
    return {value, peak, n + 1};
}

LogComplex ismail_masson_h(long n, const LogComplex& xi_exp, const QParameter& q) {
    return ismail_masson_h_traced(n, xi_exp, q).value;
}

SeriesValue stieltjes_wigert_traced(long n, const LogReal& x, const QParameter& q,
                                    const Real& eps) {
    (void)eps; // finite sum: no truncation enters
    if (n < 0)
        throw domain_error("stieltjes_wigert_eval: degree must be nonnegative");
    const Real L = q.log_q();
    std::vector<LogReal> qq(static_cast<size_t>(n) + 1);
    qq[0] = LogReal::one();
    for (long j = 1; j <= n; ++j)
        qq[static_cast<size_t>(j)] =
            qq[static_cast<size_t>(j - 1)] * LogReal::exp_of(log_one_minus_exp(j * L));

    std::vector<LogReal> terms;
    terms.reserve(static_cast<size_t>(n) + 1);
    for (long k = 0; k <= n; ++k)
        terms.push_back(LogReal::exp_of(L * k * k) * (-x).pow_int(k) /
                        (qq[static_cast<size_t>(k)] * qq[static_cast<size_t>(n - k)]));
    SeriesValue out = finish(std::move(terms));
    out.terms = n + 1;
    return out;
}

LogReal stieltjes_wigert_eval(long n, const LogReal& x, const QParameter& q,
                              const Real& eps) {
    return real_part_checked(stieltjes_wigert_traced(n, x, q, eps), "stieltjes_wigert_eval");
}

SeriesValue q_laguerre_traced(long n, const Real& alpha, const LogReal& x,
                              const QParameter& q, const Real& eps) {
    (void)eps;
    if (n < 0)
        throw domain_error("q_laguerre_eval: degree must be nonnegative");
    if (!(alpha > -1))
        throw domain_error("q_laguerre_eval: requires alpha > -1");
    const Real L = q.log_q();
    std::vector<LogReal> qq(static_cast<size_t>(n) + 1);
    qq[0] = LogReal::one();
    for (long j = 1; j <= n; ++j)
        qq[static_cast<size_t>(j)] =
            qq[static_cast<size_t>(j - 1)] * LogReal::exp_of(log_one_minus_exp(j * L));

    // (q^{alpha+1};q)_n / (q^{alpha+1};q)_{n-k} over the window (n-k, n].
    LogReal window = LogReal::one();
    std::vector<LogReal> terms;
    terms.reserve(static_cast<size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) {
        terms.push_back(LogReal::exp_of(L * (Real(k) * k + alpha * k)) *
                        (-x).pow_int(k) * window /
                        (qq[static_cast<size_t>(k)] * qq[static_cast<size_t>(n - k)]));
        if (k == n)
            break;
        window *= LogReal::exp_of(log_one_minus_exp((alpha + 1 + (n - k - 1)) * L));
    }
    SeriesValue out = finish(std::move(terms));
    out.terms = n + 1;
    return out;
}

LogReal q_laguerre_eval(long n, const Real& alpha, const LogReal& x, const QParameter& q,
                        const Real& eps) {
    return real_part_checked(q_laguerre_traced(n, alpha, x, q, eps), "q_laguerre_eval");
}

SeriesValue rphis_traced(const ConfluentParams& params, const QParameter& q,
                         const LogReal& z, const Real& eps) {
    if (!(eps > 0))
        throw domain_error("rphis_eval: tolerance must be positive");
    const SeriesSpec& spec = params.spec;
    const Real L = q.log_q();
    const Real wL = spec.ell * L;
    const int two_ell = params.s() + 1 - params.r();
    const Real eps_p = eps / Real(16 * (params.r() + params.s() + 1));

    if (z.is_zero())
        return {LogComplex::one(), Real(0), 1};

    // Effective per-term argument (z q^{-ell})^k with the (-1)^{k(s+1-r)} sign
    // folded in.
    LogReal arg = z * LogReal::exp_of(-spec.ell * L);
    if (two_ell % 2 != 0)
        arg = -arg;

    // |(a;q)_k| <= exp(sum |a_j| / (1-q)); 1/(q, b;q)_k <= 1/((q;q)(b;q))_inf.
    Real log_a_max(0);
    for (const auto& a : spec.alphas)
        log_a_max += exp(a * L) / q.one_minus_q();
    log_a_max -= qpoch_infinite(q.power(Real(1)), q, eps_p).value.logmag();
    for (const auto& b : spec.betas)
        log_a_max -= qpoch_infinite(q.power(b), q, eps_p).value.logmag();
    Real log_a_lo(0);
    for (const auto& a : spec.alphas)
        log_a_lo += qpoch_infinite(q.power(a), q, eps_p).value.logmag();

    for (int attempt = 0;; ++attempt) {
        Real widen = pow(Real(4), attempt);
        GaussianWindow win =
            plan_window(wL, arg.logmag(), eps / widen, log_a_max - log_a_lo);

        // Finite Pochhammers (a;q)_k, (q;q)_k, (b;q)_k from the window start.
        LogReal num = LogReal::one();
        for (const auto& a : spec.alphas)
            num *= qpoch_finite(q.power(a), q, win.k_lo);
        LogReal den = qpoch_finite(q.power(Real(1)), q, win.k_lo);
        for (const auto& b : spec.betas)
            den *= qpoch_finite(q.power(b), q, win.k_lo);

        std::vector<LogReal> terms;
        Real max_term;
        bool have_max = false;
        for (long k = win.k_lo;; ++k) {
            LogReal t = num / den * LogReal::exp_of(wL * k * k) * arg.pow_int(k);
            if (!t.is_zero()) {
                if (!have_max || max_term < t.logmag()) {
                    max_term = t.logmag();
                    have_max = true;
                }
                terms.push_back(std::move(t));
            }
            if (k == win.k_hi)
                break;
            for (const auto& a : spec.alphas)
                num *= LogReal::exp_of(log_one_minus_exp((a + k) * L));
            den *= LogReal::exp_of(log_one_minus_exp((k + 1) * L));
            for (const auto& b : spec.betas)
                den *= LogReal::exp_of(log_one_minus_exp((b + k) * L));
        }
        if (have_max &&
            tails_certified(wL, arg.logmag(), win, log_a_max, max_term, eps))
            return finish(std::move(terms));
        if (attempt >= 3)
            throw scale_error("rphis_eval: could not certify the truncation window");
    }
}

LogReal rphis_eval(const ConfluentParams& params, const QParameter& q, const LogReal& z,
                   const Real& eps) {
    return real_part_checked(rphis_traced(params, q, z, eps), "rphis_eval");
}

} // namespace qscale
