#include <doctest.h>

#include "ratingfbp/boundaries.hpp"
#include "ratingfbp/fd_solver.hpp"

#include <cmath>
#include <vector>

using namespace ratingfbp;

namespace {

ValidatedParams reference_params()
{
    return validate_params(ModelParams{});
}

std::vector<double> row_from_v(const Grid& g, double (*v)(double))
{
    std::vector<double> u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = std::exp(g.xi(j)) * v(g.xi(j));
    return u;
}

}  // namespace

TEST_CASE("initial row gives kappa = 0 and eta = log(1/gamma)")
{
    const Grid g = make_grid(-5.0, 5.0, 0.005, 0.01, 1.0);
    const auto u = initial_condition(g);
    const double kappa = extract_default_boundary(u, g, default_boundary_tolerance(1e-8));
    const double eta = extract_transit_boundary(u, g, 0.6);
    CHECK(std::abs(kappa) <= g.dxi());
    CHECK(std::abs(eta - std::log(1.0 / 0.6)) <= g.dxi());
}

TEST_CASE("traveling-wave row recovers kappa* and eta* within a cell")
{
    const Grid g = make_grid(-5.0, 5.0, 0.01, 0.01, 1.0);
    const TravelingWave tw = build_traveling_wave(reference_params());
    std::vector<double> u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = tw_u_value(tw, g.xi(j));
    CHECK(std::abs(extract_default_boundary(u, g, 1e-6) - tw.kappa_star) <= g.dxi());
    CHECK(std::abs(extract_transit_boundary(u, g, tw.gamma) - tw.eta_star) <= g.dxi());
    CHECK(sup_error_vs_tw(u, tw, g) == 0.0);
}

TEST_CASE("linear interpolation is exact for piecewise-linear v")
{
    const Grid g = make_grid(-2.0, 2.0, 0.1, 0.01, 1.0);
    // v = 1 up to the node at -0.7, then falls with slope -0.5
    const auto u = row_from_v(g, [](double xi) { return xi <= -0.7 + 1e-9 ? 1.0 : 1.0 - 0.5 * (xi + 0.7); });
    const double eta = extract_transit_boundary(u, g, 0.6);
    CHECK(eta == doctest::Approx(0.1).epsilon(1e-12));
    const double tol = 1e-3;
    CHECK(extract_default_boundary(u, g, tol) == doctest::Approx(-0.7 + 2.0 * tol).epsilon(1e-12));
}

TEST_CASE("no default region returns the left sentinel")
{
    const Grid g = make_grid(-2.0, 2.0, 0.1, 0.01, 1.0);
    const auto all_one = row_from_v(g, [](double) { return 1.0; });
    CHECK(extract_default_boundary(all_one, g, 1e-6) == g.xi_min);
    const auto all_low = row_from_v(g, [](double xi) { return 0.5 - 0.01 * xi; });
    CHECK(extract_default_boundary(all_low, g, 1e-6) == g.xi_min);
}

TEST_CASE("transit extraction rejects missing, rising or repeated crossings")
{
    const Grid g = make_grid(-2.0, 2.0, 0.1, 0.01, 1.0);
    const auto flat = row_from_v(g, [](double) { return 0.6; });
    CHECK_THROWS_AS(extract_transit_boundary(flat, g, 0.6), BoundaryError);
    const auto above = row_from_v(g, [](double) { return 0.9; });
    CHECK_THROWS_AS(extract_transit_boundary(above, g, 0.6), BoundaryError);
    const auto rising = row_from_v(g, [](double xi) { return 0.6 + 0.1 * xi; });
    CHECK_THROWS_AS(extract_transit_boundary(rising, g, 0.6), BoundaryError);
    const auto wiggle = row_from_v(g, [](double xi) { return 0.6 + 0.1 * std::cos(3.0 * xi); });
    CHECK_THROWS_AS(extract_transit_boundary(wiggle, g, 0.6), BoundaryError);
    CHECK_THROWS_AS(extract_transit_boundary(std::vector<double>(3), g, 0.6), std::invalid_argument);
}

TEST_CASE("M-matrix structural check")
{
    TridiagonalSystem s(3);
    s.diag = {2.0, 3.0, 2.0};
    s.lower = {0.0, -1.0, -1.0};
    s.upper = {-1.0, -1.0, 0.0};
    CHECK(check_m_matrix(s));

    TridiagonalSystem pos = s;
    pos.upper[1] = 0.5;
    CHECK_FALSE(check_m_matrix(pos));

    TridiagonalSystem weak = s;
    weak.diag[1] = 2.0;
    CHECK_FALSE(check_m_matrix(weak));

    TridiagonalSystem neg = s;
    neg.diag[0] = -2.0;
    CHECK_FALSE(check_m_matrix(neg));

    // entries outside the band are ignored
    TridiagonalSystem ends = s;
    ends.lower[0] = 5.0;
    ends.upper[2] = 5.0;
    CHECK(check_m_matrix(ends));
}
