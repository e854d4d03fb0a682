#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ratingfbp {

struct TravelingWave;

/// Uniform space-time mesh. Nodes are xi_j = xi_min + j dxi for j = 0..n_space,
/// times t_i = i dt for i = 0..n_steps.
struct Grid {
    double xi_min = -10.0;
    double xi_max = 10.0;
    std::size_t n_space = 2000;
    double dt = 0.01;
    std::size_t n_steps = 150000;

    double dxi() const noexcept { return (xi_max - xi_min) / static_cast<double>(n_space); }
    std::size_t size() const noexcept { return n_space + 1; }
    double xi(std::size_t j) const noexcept
    {
        return j == n_space ? xi_max : xi_min + static_cast<double>(j) * dxi();
    }
    double t(std::size_t i) const noexcept { return static_cast<double>(i) * dt; }
    double t_final() const noexcept { return t(n_steps); }

    std::vector<double> nodes() const;
};

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Grid from a spacing and horizon; n_space and n_steps are rounded to the
/// nearest integer and must reproduce dxi and t_final to 1e-9 relative.
Grid make_grid(double xi_min, double xi_max, double dxi, double dt, double t_final);

/// Structural checks: finite ordered endpoints, n_space >= 2, dt > 0.
void validate_grid(const Grid& g);

/// The domain must contain both boundary trajectories:
/// xi_min < kappa* - 1 and xi_max > log(1/gamma) + 1.
void validate_domain(const Grid& g, const TravelingWave& tw);

/// Penalty and Newton controls for the time-stepping scheme.
struct SolverConfig {
    double eps_penalty = 1e-8;
    double eps_heaviside = 1e-4;
    double tol_newton = 1e-4;
    int max_newton_iters = 50;
};

void validate_solver_config(const SolverConfig& cfg);

}  // namespace ratingfbp
