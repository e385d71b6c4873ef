#ifndef QSCALE_QSERIES_HPP
#define QSCALE_QSERIES_HPP

#include <vector>

#include "qscale/log_complex.hpp"
#include "qscale/qparameter.hpp"

namespace qscale {

// Exponent lists defining a g- or h-function instance: a_j = q^{alpha_j},
// b_k = q^{beta_k}, c_i = q^{gamma_i} (h only), plus the Gaussian weight ell.
// All exponents strictly positive so the parameters lie in [0, 1).
struct SeriesSpec {
    std::vector<Real> alphas;
    std::vector<Real> betas;
    std::vector<Real> gammas;
    Real ell{1};

    void validate() const;

    static SeriesSpec empty(Real ell = Real(1)) {
        SeriesSpec s;
        s.ell = std::move(ell);
        return s;
    }
};

// Confluent {}_r phi_s parameters; ell is pinned to (s+1-r)/2 and must be
// positive, rho = sum alpha - sum beta - 1.
struct ConfluentParams {
    SeriesSpec spec; // gammas unused

    static ConfluentParams make(std::vector<Real> alphas, std::vector<Real> betas);

    int r() const { return static_cast<int>(spec.alphas.size()); }
    int s() const { return static_cast<int>(spec.betas.size()); }
    Real rho() const;
};

// Evaluation result with the diagnostics the harness needs: the log of the
// largest accumulated |term| drives the lost-digits / guard-digit check.
struct SeriesValue {
    LogComplex value;
    Real peak_logmag;
    long terms = 0;
};

// chi(n): 1 for odd n, 0 for even n (principal character mod 2).
int char_chi(long n);

// g(a_1..a_r; b_1..b_s; q; ell; z)
//   = sum_{k>=0} (q^{k+1}, b q^k, ...;q)_inf q^{ell k^2} (-z)^k / (a q^k, ...;q)_inf,
// summed over a certified window around the Gaussian peak, largest-first.
SeriesValue g_eval_traced(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
                          const Real& eps);
LogReal g_eval(const SeriesSpec& spec, const QParameter& q, const LogReal& z,
               const Real& eps);

// h(a; b; c; q; ell; z) at degree n: the exact (n+1)-term sum; the finite
// Pochhammer ratio (q, c;q)_n / (q, c;q)_{n-k} is built incrementally over
// the index window (n-k, n].
SeriesValue h_eval_traced(const SeriesSpec& spec, const QParameter& q, long n,
                          const LogReal& z, const Real& eps);
LogReal h_eval(const SeriesSpec& spec, const QParameter& q, long n, const LogReal& z,
               const Real& eps);

// Ramanujan's entire function A_q(z) = sum q^{k^2} (-z)^k / (q;q)_k,
// summed directly (the g relation is a cross-check, not the production path).
SeriesValue ramanujan_aq_traced(const LogReal& z, const QParameter& q, const Real& eps);
LogReal ramanujan_aq(const LogReal& z, const QParameter& q, const Real& eps);

// Jackson's q-Bessel J_nu^{(2)}(z; q), nu > -1, z on a quarter-phase axis.
// Off the real axis nu must be an integer so (z/2)^nu stays on an axis.
SeriesValue jackson_j2_traced(const LogComplex& z, const Real& nu, const QParameter& q,
                              const Real& eps);
LogComplex jackson_j2(const LogComplex& z, const Real& nu, const QParameter& q,
                      const Real& eps);

// Ismail-Masson h_n(sinh xi | q), parameterized by e^{xi} on a quarter-phase
// axis; the exact (n+1)-term sum, q^{k(k-n)} handled natively in log domain.
SeriesValue ismail_masson_h_traced(long n, const LogComplex& xi_exp, const QParameter& q);
LogComplex ismail_masson_h(long n, const LogComplex& xi_exp, const QParameter& q);

// Stieltjes-Wigert S_n(x;q) = sum q^{k^2} (-x)^k / ((q;q)_k (q;q)_{n-k}).
SeriesValue stieltjes_wigert_traced(long n, const LogReal& x, const QParameter& q,
                                    const Real& eps);
LogReal stieltjes_wigert_eval(long n, const LogReal& x, const QParameter& q,
                              const Real& eps);

// q-Laguerre L_n^{(alpha)}(x;q), alpha > -1.
SeriesValue q_laguerre_traced(long n, const Real& alpha, const LogReal& x,
                              const QParameter& q, const Real& eps);
LogReal q_laguerre_eval(long n, const Real& alpha, const LogReal& x, const QParameter& q,
                        const Real& eps);

// Confluent {}_r phi_s (a; b | q, z) with the q^{ell k^2} weight; only the
// confluent case ell = (s+1-r)/2 > 0 is supported.
SeriesValue rphis_traced(const ConfluentParams& params, const QParameter& q,
                         const LogReal& z, const Real& eps);
LogReal rphis_eval(const ConfluentParams& params, const QParameter& q, const LogReal& z,
                   const Real& eps);

} // namespace qscale

#endif
