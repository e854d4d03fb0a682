#include "ratingfbp/model.hpp"

#include <cmath>
#include <sstream>

namespace ratingfbp {

const char* constraint_name(Constraint c) noexcept
{
    switch (c) {
    case Constraint::finite: return "finite";
    case Constraint::positive_rate: return "positive_rate";
    case Constraint::positive_delta: return "positive_delta";
    case Constraint::positive_volatility: return "positive_volatility";
    case Constraint::sigma_order: return "sigma_order";
    case Constraint::gamma_range: return "gamma_range";
    case Constraint::main_sigma: return "main_sigma";
    }
    return "unknown";
}

namespace {

[[noreturn]] void reject(Constraint c, const std::string& detail)
{
    throw ParamError(c, std::string("model parameter constraint '") + constraint_name(c) +
                            "' violated: " + detail);
}

}  // namespace

ValidatedParams validate_params(const ModelParams& p)
{
    if (!std::isfinite(p.r) || !std::isfinite(p.delta) || !std::isfinite(p.sigma_h) ||
        !std::isfinite(p.sigma_l) || !std::isfinite(p.gamma))
        reject(Constraint::finite, "all parameters must be finite");
    if (!(p.r > 0.0))
        reject(Constraint::positive_rate, "r must be > 0");
    if (!(p.delta > 0.0))
        reject(Constraint::positive_delta, "delta must be > 0");
    if (!(p.sigma_h > 0.0) || !(p.sigma_l > 0.0))
        reject(Constraint::positive_volatility, "volatilities must be > 0");
    if (!(p.sigma_h < p.sigma_l))
        reject(Constraint::sigma_order, "sigma_h < sigma_l required");
    if (!(p.gamma > 0.0 && p.gamma < 1.0))
        reject(Constraint::gamma_range, "0 < gamma < 1 required");

    const double lo = 0.5 * p.sigma_h * p.sigma_h;
    const double hi = 0.5 * p.sigma_l * p.sigma_l;
    if (!(lo < p.delta && p.delta < hi)) {
        std::ostringstream os;
        os.precision(17);
        os << "sigma_h^2/2 = " << lo << " < delta = " << p.delta << " < sigma_l^2/2 = " << hi
           << " required";
        reject(Constraint::main_sigma, os.str());
    }
    return ValidatedParams(p);
}

DerivedConstants derived_constants(const ValidatedParams& p) noexcept
{
    return DerivedConstants{
        2.0 * p.delta() / (p.sigma_l() * p.sigma_l()),
        2.0 * p.delta() / (p.sigma_h() * p.sigma_h()),
        p.r() - p.delta(),
    };
}

double smoothed_heaviside(double z, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("smoothed_heaviside: eps must be > 0");
    if (z <= -eps)
        return 0.0;
    if (z >= 0.0)
        return 1.0;
    const double s = z / eps;
    // 6 s^5 + 15 s^4 + 10 s^3 + 1 in Horner form
    return ((((6.0 * s + 15.0) * s + 10.0) * s) * s) * s + 1.0;
}

double sigma_eff(double u, double xi, const ValidatedParams& p, double eps)
{
    const double h = smoothed_heaviside(u - p.gamma() * std::exp(xi), eps);
    return p.sigma_h() + (p.sigma_l() - p.sigma_h()) * h;
}

}  // namespace ratingfbp
