#pragma once

#include "ratingfbp/grid.hpp"
#include "ratingfbp/traveling_wave.hpp"
#include "ratingfbp/tridiagonal.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace ratingfbp {

/// Default and transit boundary positions per time step.
struct BoundaryTrace {
    std::vector<double> times;
    std::vector<double> kappa_hat;
    std::vector<double> eta_hat;

    void push_back(double t, double kappa, double eta)
    {
        times.push_back(t);
        kappa_hat.push_back(kappa);
        eta_hat.push_back(eta);
    }
    std::size_t size() const noexcept { return times.size(); }
};

class BoundaryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default detection threshold used when none is given: 10 eps + 1e-6.
inline double default_boundary_tolerance(double eps_penalty) noexcept
{
    return 10.0 * eps_penalty + 1e-6;
}

/// Smallest xi where v = e^{-xi} u drops below 1 - tol_b, refined by linear
/// interpolation of v inside the bracketing cell. Returns xi_min when no
/// bracketing cell exists (v >= 1 - tol_b everywhere, or already below at j = 0).
double extract_default_boundary(std::span<const double> u_row, const Grid& grid, double tol_b);

/// Crossing of v = gamma, linearly interpolated. v is decreasing in xi for
/// a correct solve, so the crossing must be unique; zero or several crossings
/// throw BoundaryError.
double extract_transit_boundary(std::span<const double> u_row, const Grid& grid, double gamma);

/// max_j |u_j - e^{xi_j} K(xi_j)|.
double sup_error_vs_tw(std::span<const double> u_row, const TravelingWave& tw, const Grid& grid);

/// True iff every diagonal entry is positive, every off-diagonal entry is
/// non-positive and every row is strictly diagonally dominant.
bool check_m_matrix(const TridiagonalSystem& sys) noexcept;

}  // namespace ratingfbp
