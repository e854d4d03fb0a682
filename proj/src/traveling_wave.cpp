#include "ratingfbp/traveling_wave.hpp"

#include <cmath>
#include <stdexcept>

namespace ratingfbp {

double psi(double x, double c_l)
{
    if (!(x >= 0.0))
        throw std::invalid_argument("psi: x must be >= 0");
    const double k = 1.0 / (1.0 - c_l);
    return k * (std::exp(-c_l * x) - c_l * std::exp(-x));
}

double psi_inverse(double gamma, double c_l, double tol)
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("psi_inverse: gamma must lie in (0, 1)");
    if (!(c_l > 0.0 && c_l < 1.0))
        throw std::invalid_argument("psi_inverse: c_l must lie in (0, 1)");
    if (!(tol > 0.0))
        throw std::invalid_argument("psi_inverse: tol must be > 0");

    constexpr double max_bracket = 1e6;
    constexpr int max_halvings = 200;

    double hi = 1.0;
    while (!(psi(hi, c_l) < gamma)) {
        hi *= 2.0;
        if (hi > max_bracket)
            throw std::runtime_error("psi_inverse: bracket growth exceeded cap");
    }
    double lo = 0.0;
    for (int it = 0; it < max_halvings && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (psi(mid, c_l) >= gamma)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TravelingWave build_traveling_wave(const ValidatedParams& p, double tol)
{
    const DerivedConstants dc = derived_constants(p);
    const double g = p.gamma();
    const double width = psi_inverse(g, dc.c_l, tol);
    const double eta = -std::log(g + std::exp(-dc.c_l * width) / (dc.c_h - 1.0));
    const double kappa = eta - width;

    TravelingWave tw{};
    tw.kappa_star = kappa;
    tw.eta_star = eta;
    tw.psi_inv_gamma = width;
    tw.coef_b = (g - std::exp(-eta)) * std::exp(dc.c_h * eta);
    tw.coef_c = -dc.c_l * std::exp(kappa) / (1.0 - dc.c_l);
    tw.coef_d = std::exp(dc.c_l * kappa) / (1.0 - dc.c_l);
    tw.constants = dc;
    tw.gamma = g;
    return tw;
}

// The branches below are evaluated in shifted form, e^{-(xi - kappa*)} and
// e^{-c (xi - eta*)}, which equals the B/C/D form but stays well scaled far
// from the boundaries.

double tw_value(const TravelingWave& tw, double xi) noexcept
{
    const double cl = tw.constants.c_l;
    const double ch = tw.constants.c_h;
    if (xi <= tw.kappa_star)
        return 1.0;
    if (xi < tw.eta_star) {
        const double s = xi - tw.kappa_star;
        return (std::exp(-cl * s) - cl * std::exp(-s)) / (1.0 - cl);
    }
    if (xi == tw.eta_star)
        return tw.gamma;
    return std::exp(-xi) + (tw.gamma - std::exp(-tw.eta_star)) * std::exp(-ch * (xi - tw.eta_star));
}

double tw_derivative(const TravelingWave& tw, double xi) noexcept
{
    const double cl = tw.constants.c_l;
    const double ch = tw.constants.c_h;
    if (xi <= tw.kappa_star)
        return 0.0;
    if (xi < tw.eta_star) {
        const double s = xi - tw.kappa_star;
        return cl * (std::exp(-s) - std::exp(-cl * s)) / (1.0 - cl);
    }
    return -std::exp(-xi) -
           ch * (tw.gamma - std::exp(-tw.eta_star)) * std::exp(-ch * (xi - tw.eta_star));
}

double tw_second_derivative(const TravelingWave& tw, double xi) noexcept
{
    const double cl = tw.constants.c_l;
    const double ch = tw.constants.c_h;
    if (xi < tw.kappa_star)
        return 0.0;
    if (xi < tw.eta_star) {
        const double s = xi - tw.kappa_star;
        return cl * (cl * std::exp(-cl * s) - std::exp(-s)) / (1.0 - cl);
    }
    return std::exp(-xi) +
           ch * ch * (tw.gamma - std::exp(-tw.eta_star)) * std::exp(-ch * (xi - tw.eta_star));
}

double ode_residual(const TravelingWave& tw, double xi, double c) noexcept
{
    const double k = tw_value(tw, xi);
    const double dk = tw_derivative(tw, xi);
    const double d2k = tw_second_derivative(tw, xi);
    return d2k + dk + c * (dk + k);
}

double tw_residual(const TravelingWave& tw, double xi) noexcept
{
    const double c = xi > tw.eta_star ? tw.constants.c_h : tw.constants.c_l;
    return ode_residual(tw, xi, c);
}

}  // namespace ratingfbp
