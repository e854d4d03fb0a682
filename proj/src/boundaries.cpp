#include "ratingfbp/boundaries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ratingfbp {

namespace {

void require_row(std::span<const double> u_row, const Grid& grid, const char* who)
{
    if (u_row.size() != grid.size()) {
        std::ostringstream os;
        os << who << ": row has " << u_row.size() << " values, grid has " << grid.size();
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double extract_default_boundary(std::span<const double> u_row, const Grid& grid, double tol_b)
{
    require_row(u_row, grid, "extract_default_boundary");
    const double level = 1.0 - tol_b;
    const double h = grid.dxi();
    double v_prev = u_to_v(u_row[0], grid.xi(0));
    if (v_prev < level)
        return grid.xi_min;
    for (std::size_t j = 1; j < u_row.size(); ++j) {
        const double v = u_to_v(u_row[j], grid.xi(j));
        if (v < level)
            return grid.xi(j - 1) + (v_prev - level) / (v_prev - v) * h;
        v_prev = v;
    }
    return grid.xi_min;
}

double extract_transit_boundary(std::span<const double> u_row, const Grid& grid, double gamma)
{
    require_row(u_row, grid, "extract_transit_boundary");
    std::size_t crossings = 0;
    std::size_t at = 0;
    bool rising = false;
    double v_prev = u_to_v(u_row[0], grid.xi(0));
    double v_at = 0.0;
    double v_next = 0.0;
    for (std::size_t j = 1; j < u_row.size(); ++j) {
        const double v = u_to_v(u_row[j], grid.xi(j));
        const bool above_prev = v_prev >= gamma;
        const bool above = v >= gamma;
        if (above_prev != above) {
            ++crossings;
            at = j - 1;
            rising = above;
            v_at = v_prev;
            v_next = v;
        }
        v_prev = v;
    }
    if (crossings != 1 || rising) {
        std::ostringstream os;
        os << "extract_transit_boundary: expected one downward crossing of v = " << gamma << ", found "
           << crossings << (rising ? " (rising)" : "");
        throw BoundaryError(os.str());
    }
    return grid.xi(at) + (v_at - gamma) / (v_at - v_next) * grid.dxi();
}

double sup_error_vs_tw(std::span<const double> u_row, const TravelingWave& tw, const Grid& grid)
{
    require_row(u_row, grid, "sup_error_vs_tw");
    double worst = 0.0;
    for (std::size_t j = 0; j < u_row.size(); ++j)
        worst = std::max(worst, std::abs(u_row[j] - tw_u_value(tw, grid.xi(j))));
    return worst;
}

bool check_m_matrix(const TridiagonalSystem& sys) noexcept
{
    const std::size_t n = sys.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i > 0 ? sys.lower[i] : 0.0;
        const double up = i + 1 < n ? sys.upper[i] : 0.0;
        if (!(sys.diag[i] > 0.0) || lo > 0.0 || up > 0.0)
            return false;
        if (!(sys.diag[i] > std::abs(lo) + std::abs(up)))
            return false;
    }
    return true;
}

}  // namespace ratingfbp
