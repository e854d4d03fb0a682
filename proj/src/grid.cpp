#include "ratingfbp/grid.hpp"

#include "ratingfbp/traveling_wave.hpp"

#include <algorithm>
#include <sstream>

namespace ratingfbp {

std::vector<double> Grid::nodes() const
{
    std::vector<double> xs(size());
    for (std::size_t j = 0; j < xs.size(); ++j)
        xs[j] = xi(j);
    return xs;
}

namespace {

std::size_t rounded_count(double span, double step, const char* what)
{
    const double ratio = span / step;
    const double n = std::round(ratio);
    if (!(n >= 0.0) || std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
        std::ostringstream os;
        os << "make_grid: " << what << " does not divide its interval (ratio " << ratio << ")";
        throw GridError(os.str());
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

Grid make_grid(double xi_min, double xi_max, double dxi, double dt, double t_final)
{
    if (!(dxi > 0.0) || !(dt > 0.0))
        throw GridError("make_grid: dxi and dt must be > 0");
    if (!(t_final >= 0.0))
        throw GridError("make_grid: t_final must be >= 0");
    if (!(xi_max > xi_min))
        throw GridError("make_grid: xi_max must exceed xi_min");
    Grid g;
    g.xi_min = xi_min;
    g.xi_max = xi_max;
    g.n_space = rounded_count(xi_max - xi_min, dxi, "dxi");
    g.dt = dt;
    g.n_steps = rounded_count(t_final, dt, "dt");
    validate_grid(g);
    return g;
}

void validate_grid(const Grid& g)
{
    if (!std::isfinite(g.xi_min) || !std::isfinite(g.xi_max) || !(g.xi_max > g.xi_min))
        throw GridError("grid: need finite xi_min < xi_max");
    if (g.n_space < 2)
        throw GridError("grid: need at least two intervals");
    if (!(g.dt > 0.0) || !std::isfinite(g.dt))
        throw GridError("grid: dt must be > 0");
}

void validate_domain(const Grid& g, const TravelingWave& tw)
{
    const double need_left = tw.kappa_star - 1.0;
    const double need_right = std::log(1.0 / tw.gamma) + 1.0;
    if (!(g.xi_min < need_left) || !(g.xi_max > need_right)) {
        std::ostringstream os;
        os << "grid: domain [" << g.xi_min << ", " << g.xi_max << "] must satisfy xi_min < "
           << need_left << " and xi_max > " << need_right;
        throw GridError(os.str());
    }
}

void validate_solver_config(const SolverConfig& cfg)
{
    if (!(cfg.eps_penalty > 0.0) || !std::isfinite(cfg.eps_penalty))
        throw std::invalid_argument("solver: eps_penalty must be > 0");
    if (!(cfg.eps_heaviside > 0.0) || !std::isfinite(cfg.eps_heaviside))
        throw std::invalid_argument("solver: eps_heaviside must be > 0");
    if (!(cfg.tol_newton > 0.0) || !std::isfinite(cfg.tol_newton))
        throw std::invalid_argument("solver: tol_newton must be > 0");
    if (cfg.max_newton_iters < 2)
        throw std::invalid_argument("solver: max_newton_iters must be >= 2");
}

}  // namespace ratingfbp
