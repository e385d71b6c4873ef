#ifndef QSCALE_THETA_HPP
#define QSCALE_THETA_HPP

#include "qscale/log_complex.hpp"
#include "qscale/qparameter.hpp"

namespace qscale {

// Which axis the elliptic argument lives on. The scaled formulas only ever
// need the argument real (oscillatory side) or purely imaginary (real
// multiplicative argument z = e^{-2 pi vhat}); general complex v is out of
// scope.
enum class ThetaAxis { real, imaginary };

// Evaluation point of theta_index(v | tau) with tau = i tau_im purely
// imaginary. For axis == imaginary the stored v is vhat, the argument being
// i*vhat.
struct ThetaPoint {
    int index;   // 1..4
    ThetaAxis axis;
    Real v;
    Real tau_im; // > 0

    ThetaPoint(int index_, ThetaAxis axis_, Real v_, Real tau_im_);
};

// Multiplicative form theta_index(z; q), z = e^{2 pi i v} restricted to real
// positive z; pairs with the imaginary-axis ThetaPoint through
// z = e^{-2 pi vhat} and nome q = e^{-pi tau_im}.
struct NomeForm {
    LogReal z;
    QParameter q;

    NomeForm(LogReal z_, QParameter q_);
};

ThetaPoint nome_point(int index, const NomeForm& nf);

// Image of a point under tau -> -1/tau, with the exact factor of the
// transformation table: theta_{image.index}(image) = multiplier * theta_index(p).
struct ThetaTransform {
    ThetaPoint image;
    LogComplex multiplier;
};

// Bilateral series with certified Gaussian/geometric tail truncation,
// symmetric terms paired before accumulation. Throws regime_error when the
// certified window would exceed 1e7 terms (tau_im far too small; use
// theta_auto instead).
LogComplex theta_series(const ThetaPoint& p, const Real& eps);

// Jacobi triple product route: three certified infinite products plus the
// explicit sin/cos (or sinh/cosh) prefactor for indices 1 and 2.
LogComplex theta_product(const ThetaPoint& p, const Real& eps);

ThetaTransform theta_transform(const ThetaPoint& p);

// Series evaluation in whichever regime converges fast: direct for
// tau_im >= 1, otherwise through one modular transformation.
LogComplex theta_auto(const ThetaPoint& p, const Real& eps);
LogComplex theta_auto(int index, const NomeForm& nf, const Real& eps);

} // namespace qscale

#endif
