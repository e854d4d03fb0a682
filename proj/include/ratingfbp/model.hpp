#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ratingfbp {

/// Financial constants of the rating-migration bond model. Face value is 1.
struct ModelParams {
    double r = 0.05;        ///< risk-free rate
    double delta = 0.03;    ///< credit discount rate
    double sigma_h = 0.2;   ///< volatility in the high-rating region
    double sigma_l = 0.3;   ///< volatility in the low-rating region
    double gamma = 0.6;     ///< debt/asset migration threshold
};

/// Constraint violated by a ModelParams instance.
enum class Constraint {
    finite,
    positive_rate,
    positive_delta,
    positive_volatility,
    sigma_order,  ///< sigma_h < sigma_l
    gamma_range,  ///< 0 < gamma < 1
    main_sigma,   ///< sigma_h^2/2 < delta < sigma_l^2/2
};

const char* constraint_name(Constraint c) noexcept;

class ParamError : public std::invalid_argument {
public:
    ParamError(Constraint c, const std::string& what)
        : std::invalid_argument(what), constraint_(c) {}
    Constraint constraint() const noexcept { return constraint_; }

private:
    Constraint constraint_;
};

/// ModelParams that passed validate_params(). Only constructible through it.
class ValidatedParams {
public:
    const ModelParams& raw() const noexcept { return p_; }
    double r() const noexcept { return p_.r; }
    double delta() const noexcept { return p_.delta; }
    double sigma_h() const noexcept { return p_.sigma_h; }
    double sigma_l() const noexcept { return p_.sigma_l; }
    double gamma() const noexcept { return p_.gamma; }

private:
    explicit ValidatedParams(const ModelParams& p) : p_(p) {}
    friend ValidatedParams validate_params(const ModelParams& p);
    ModelParams p_;
};

/// Throws ParamError naming the first violated constraint.
ValidatedParams validate_params(const ModelParams& p);

struct DerivedConstants {
    double c_l;  ///< 2 delta / sigma_l^2, always < 1
    double c_h;  ///< 2 delta / sigma_h^2, always > 1
    double c;    ///< drift of the moving frame, r - delta
};

DerivedConstants derived_constants(const ValidatedParams& p) noexcept;

/// C^1 quintic ramp: 0 for z <= -eps, 1 for z >= 0.
double smoothed_heaviside(double z, double eps);

/// Regularised volatility sigma_h + (sigma_l - sigma_h) H_eps(u - gamma e^xi).
double sigma_eff(double u, double xi, const ValidatedParams& p, double eps);

/// v = e^{-xi} u and its inverse.
inline double u_to_v(double u, double xi) noexcept { return std::exp(-xi) * u; }
inline double v_to_u(double v, double xi) noexcept { return std::exp(xi) * v; }

}  // namespace ratingfbp
