#pragma once

#include "ratingfbp/model.hpp"

namespace ratingfbp {

/// Psi(x) = -c_l/(1-c_l) e^{-x} + 1/(1-c_l) e^{-c_l x}, defined for x >= 0.
///
/// Psi(0) = 1 and Psi decreases strictly to 0, so Psi(eta* - kappa*) = gamma
/// fixes the width of the low-rating band of the steady profile.
double psi(double x, double c_l);

/// Unique x >= 0 with Psi(x) = gamma, by bisection.
///
/// The bracket [0, X] starts at X = 1 and doubles until Psi(X) < gamma;
/// growth past X = 1e6 throws std::runtime_error. Bisection stops once the
/// bracket is narrower than tol or after 200 halvings.
double psi_inverse(double gamma, double c_l, double tol = 1e-12);

/// Closed-form steady profile K(xi) of the v-frame obstacle problem.
///
///   K = 1                               xi <= kappa*
///   K = C e^{-xi} + D e^{-c_l xi}       kappa* < xi < eta*
///   K = e^{-xi} + B e^{-c_h xi}         xi > eta*
///
/// K is C^1 on [kappa*, inf): K(kappa*) = 1, K'(kappa*) = 0, K(eta*) = gamma.
struct TravelingWave {
    double kappa_star;
    double eta_star;
    double psi_inv_gamma;  ///< eta* - kappa*
    double coef_b;
    double coef_c;
    double coef_d;
    DerivedConstants constants;
    double gamma;
};

TravelingWave build_traveling_wave(const ValidatedParams& p, double tol = 1e-12);

double tw_value(const TravelingWave& tw, double xi) noexcept;
/// Right limit (0) at kappa*; shared one-sided value at eta*.
double tw_derivative(const TravelingWave& tw, double xi) noexcept;
/// Piecewise second derivative; at eta* the upper-branch value is returned.
double tw_second_derivative(const TravelingWave& tw, double xi) noexcept;

/// K'' + K' + c (K' + K) evaluated with an explicit regime constant c.
double ode_residual(const TravelingWave& tw, double xi, double c) noexcept;
/// ode_residual with c_h above eta* and c_l in (kappa*, eta*).
double tw_residual(const TravelingWave& tw, double xi) noexcept;

/// e^{xi} K(xi): the steady profile in the u-frame.
inline double tw_u_value(const TravelingWave& tw, double xi) noexcept
{
    return std::exp(xi) * tw_value(tw, xi);
}

}  // namespace ratingfbp
