#ifndef QSCALE_ASYMPTOTICS_HPP
#define QSCALE_ASYMPTOTICS_HPP

#include <map>
#include <string>

#include "qscale/qseries.hpp"

namespace qscale {

// A scale sequence lambda_n coupling q = exp(-pi/lambda_n) to the index n.
// Admissibility (lambda_n/log n -> inf, n/lambda_n^2 -> inf) is checked by
// parameter constraints on the preset families plus a numeric probe of both
// ratios on a geometric grid.
class AdmissibleScale {
public:
    // lambda_n = n^beta log^gamma n, 0 < beta < 1/2, gamma >= 0.
    static AdmissibleScale power(double beta, double gamma = 0);
    // lambda_n = log^gamma n, gamma > 1.
    static AdmissibleScale log_power(double gamma);
    // Explicit n -> lambda_n table (validated numerically on its own points).
    static AdmissibleScale table(std::map<long, double> values);

    // Compact forms: "n^0.4", "n^0.3*log", "n^0.3*log^2", "log^2".
    static AdmissibleScale parse(const std::string& text);

    Real lambda(long n) const;
    void validate() const; // throws scale_error with the failed ratio
    const std::string& label() const { return label_; }

private:
    enum class Kind { power, log_power, table };
    Kind kind_ = Kind::power;
    double beta_ = 0, gamma_ = 0;
    std::map<long, double> table_;
    std::string label_;
};

// One cell of a scaled evaluation: q is built from lambda via t = 1/lambda,
// so log q = -pi/lambda_n holds by construction.
struct ScaledPoint {
    long n;
    Real v;
    Real lambda;
    QParameter q;

    static ScaledPoint make(const AdmissibleScale& scale, long n, const Real& v);
    static ScaledPoint make(long n, const Real& v, const Real& lambda);
};

enum class Branch { minus, plus };

// Plus-branch main terms decomposed as prefactor * cos_value, the form the
// double-rate claim is actually checkable in (relative error is undefined at
// cosine zeros; the bracket residual is not).
struct CosBracket {
    LogComplex prefactor;
    Real cos_argument; // cosine is cos(pi * cos_argument)
    Real cos_value;

    LogComplex folded() const {
        return prefactor * LogComplex(LogReal::from_value(cos_value));
    }
};

// Main terms of the g-theorem: sqrt(lambda/ell) exp{(pi lambda/ell)(v + 2n ell/lambda)^2}
// for the -z branch, and the cosine form with the extra exp(-pi lambda/(4 ell))
// for the +z branch. Error factors are never folded in.
LogReal g_asym_minus(const SeriesSpec& spec, const ScaledPoint& p);
CosBracket g_asym_plus_bracket(const SeriesSpec& spec, const ScaledPoint& p);
LogReal g_asym_plus(const SeriesSpec& spec, const ScaledPoint& p);

// Main terms of the h-theorem at degree p.n (the paper couples the degree to
// the scale index).
LogReal h_asym_minus(const SeriesSpec& spec, const ScaledPoint& p);
CosBracket h_asym_plus_bracket(const SeriesSpec& spec, const ScaledPoint& p);
LogReal h_asym_plus(const SeriesSpec& spec, const ScaledPoint& p);

// Corollary main terms, one per named function. Branch::minus is the
// non-oscillatory display, Branch::plus the cosine display.
LogReal cor_aq(const ScaledPoint& p, Branch branch);
CosBracket cor_aq_bracket(const ScaledPoint& p);

LogComplex cor_jackson(const ScaledPoint& p, const Real& nu, Branch branch);
CosBracket cor_jackson_bracket(const ScaledPoint& p, const Real& nu);

LogReal cor_confluent(const ConfluentParams& params, const ScaledPoint& p, Branch branch);
CosBracket cor_confluent_bracket(const ConfluentParams& params, const ScaledPoint& p);

LogComplex cor_ismail_masson(const ScaledPoint& p, long n, Branch branch);
CosBracket cor_ismail_masson_bracket(const ScaledPoint& p, long n);

LogReal cor_stieltjes_wigert(const ScaledPoint& p, long n, Branch branch);
CosBracket cor_stieltjes_wigert_bracket(const ScaledPoint& p, long n);

LogReal cor_q_laguerre(const ScaledPoint& p, long n, const Real& alpha, Branch branch);
CosBracket cor_q_laguerre_bracket(const ScaledPoint& p, long n, const Real& alpha);

// Finite-n theta representations with their explicit remainder bounds.
struct RemainderCertificate {
    LogReal bound;    // the lemma's bound, >= 0
    LogReal observed; // |exact normalized - theta main|
    long n_threshold; // smallest n from which observed <= bound was seen
};

struct ThetaRep {
    LogReal main; // the displayed main term, error excluded
    RemainderCertificate cert;
};

// g(q^{-4 n ell} z; q) = z^{2n} q^{-4 n^2 ell} {theta4(z^{-1}; q^ell) + r_g}.
ThetaRep lemma_g_theta_rep(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
                           long n, const Real& eps);

// {}_r phi_s at argument (-1)^{s-r} z q^{-4 n ell}, against theta4(z^{-1} q^ell; q^ell).
ThetaRep lemma_phi_theta_rep(const ConfluentParams& params, const QParameter& q,
                             const LogReal& z, long n, const Real& eps);

// h_n(z q^{-n ell}; q) = (-z)^{floor(n/2)} q^{-ell[n^2 - chi(n)]/4} {theta4 + r_h}.
ThetaRep lemma_h_theta_rep(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
                           long n, const Real& eps);

} // namespace qscale

#endif
