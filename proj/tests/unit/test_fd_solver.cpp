#include <doctest.h>

#include "ratingfbp/fd_solver.hpp"
#include "ratingfbp/traveling_wave.hpp"

#include <cmath>
#include <vector>

using namespace ratingfbp;

namespace {

ValidatedParams reference_params()
{
    return validate_params(ModelParams{});
}

Grid small_grid(double t_final = 5.0)
{
    return make_grid(-5.0, 5.0, 0.05, 0.1, t_final);
}

std::vector<double> exp_row(const Grid& g)
{
    std::vector<double> ex(g.size());
    for (std::size_t j = 0; j < ex.size(); ++j)
        ex[j] = std::exp(g.xi(j));
    return ex;
}

}  // namespace

TEST_CASE("grid construction")
{
    const Grid g = make_grid(-5.0, 5.0, 0.005, 0.01, 200.0);
    CHECK(g.n_space == 2000);
    CHECK(g.n_steps == 20000);
    CHECK(g.xi(0) == -5.0);
    CHECK(g.xi(g.n_space) == 5.0);
    CHECK(g.dxi() == doctest::Approx(0.005).epsilon(1e-14));
    CHECK_THROWS_AS(make_grid(-5.0, 5.0, 0.003, 0.01, 1.0), GridError);
    CHECK_THROWS_AS(make_grid(5.0, -5.0, 0.01, 0.01, 1.0), GridError);
    CHECK_THROWS_AS(make_grid(-5.0, 5.0, 0.01, 0.0, 1.0), GridError);

    const TravelingWave tw = build_traveling_wave(reference_params());
    CHECK_NOTHROW(validate_domain(g, tw));
    CHECK_THROWS_AS(validate_domain(make_grid(-2.0, 5.0, 0.01, 0.01, 1.0), tw), GridError);
    CHECK_THROWS_AS(validate_domain(make_grid(-5.0, 1.0, 0.01, 0.01, 1.0), tw), GridError);
}

TEST_CASE("solver config validation")
{
    SolverConfig c;
    CHECK_NOTHROW(validate_solver_config(c));
    c.tol_newton = 0.0;
    CHECK_THROWS_AS(validate_solver_config(c), std::invalid_argument);
    c = {};
    c.eps_penalty = -1.0;
    CHECK_THROWS_AS(validate_solver_config(c), std::invalid_argument);
    c = {};
    c.max_newton_iters = 1;
    CHECK_THROWS_AS(validate_solver_config(c), std::invalid_argument);
}

TEST_CASE("initial condition is min(1, e^xi)")
{
    const Grid g = small_grid();
    const auto u = initial_condition(g);
    for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(u[j] == std::min(1.0, std::exp(g.xi(j))));
}

TEST_CASE("assembled rows match hand-computed stencils")
{
    const Grid g = small_grid();
    const double h = g.dxi();
    const double dt = g.dt;
    const ValidatedParams p = reference_params();
    const SolverConfig cfg;

    SUBCASE("high-rating volatility, forward convection")
    {
        // u_prev = 0 sits far below gamma e^xi, so sigma = sigma_h and b = 0.01 > 0
        const std::vector<double> u(g.size(), 0.0);
        const TridiagonalSystem s = assemble_system(u, g, p, cfg);
        const double d = 0.5 * 0.04 / (h * h);
        for (std::size_t j : {std::size_t{1}, std::size_t{100}, g.n_space - 1}) {
            CHECK(s.lower[j] == doctest::Approx(-d).epsilon(1e-14));
            CHECK(s.upper[j] == doctest::Approx(-d - 0.01 / h).epsilon(1e-14));
            CHECK(s.diag[j] == doctest::Approx(1.0 / dt + 2.0 * d + 0.01 / h).epsilon(1e-14));
            CHECK(s.rhs[j] == 0.0);
        }
    }
    SUBCASE("low-rating volatility, backward convection")
    {
        // u_prev = 10 sits above gamma e^xi for xi < log(10/0.6); b = 0.03 - 0.045 < 0
        const std::vector<double> u(g.size(), 10.0);
        const TridiagonalSystem s = assemble_system(u, g, p, cfg);
        const double d = 0.5 * 0.09 / (h * h);
        const std::size_t j = 50;
        CHECK(s.lower[j] == doctest::Approx(-d - 0.015 / h).epsilon(1e-14));
        CHECK(s.upper[j] == doctest::Approx(-d).epsilon(1e-14));
        CHECK(s.diag[j] == doctest::Approx(1.0 / dt + 2.0 * d + 0.015 / h).epsilon(1e-14));
        CHECK(s.rhs[j] == doctest::Approx(10.0 / dt).epsilon(1e-14));
    }
    SUBCASE("Dirichlet rows")
    {
        const auto u = initial_condition(g);
        const TridiagonalSystem s = assemble_system(u, g, p, cfg);
        CHECK(s.diag[0] == 1.0);
        CHECK(s.upper[0] == 0.0);
        CHECK(s.rhs[0] == std::exp(-5.0));
        CHECK(s.diag[g.n_space] == 1.0);
        CHECK(s.lower[g.n_space] == 0.0);
        CHECK(s.rhs[g.n_space] == 1.0);
    }
    CHECK_THROWS_AS(assemble_system(std::vector<double>(3, 0.0), g, p, cfg), std::invalid_argument);
}

TEST_CASE("assembled systems are M-matrices")
{
    const Grid g = make_grid(-5.0, 5.0, 0.005, 0.01, 1.0);
    const auto u = initial_condition(g);
    CHECK(check_m_matrix(assemble_system(u, g, reference_params(), SolverConfig{})));
    const std::vector<double> hi(g.size(), 10.0);
    CHECK(check_m_matrix(assemble_system(hi, g, reference_params(), SolverConfig{})));
}

TEST_CASE("Newton with an inactive obstacle reduces to one linear solve")
{
    const Grid g = small_grid();
    const auto u0 = initial_condition(g);
    const TridiagonalSystem s = assemble_system(u0, g, reference_params(), SolverConfig{});
    const std::vector<double> far(g.size(), 1e6);
    const NewtonResult r = newton_penalty_solve(s, far, u0, SolverConfig{});
    const auto plain = thomas_solve(s);
    for (std::size_t j = 0; j < plain.size(); ++j)
        CHECK(std::abs(r.u[j] - plain[j]) < 1e-12);
    CHECK(r.iterations <= 2);
}

TEST_CASE("Newton enforces the obstacle up to the penalty scale")
{
    const Grid g = small_grid();
    const SolverConfig cfg;
    const auto u0 = initial_condition(g);
    const auto ex = exp_row(g);
    const TridiagonalSystem s = assemble_system(u0, g, reference_params(), cfg);
    // an unconstrained step overshoots e^xi where the payoff kink diffuses
    const auto plain = thomas_solve(s);
    double overshoot = 0.0;
    for (std::size_t j = 0; j < plain.size(); ++j)
        overshoot = std::max(overshoot, plain[j] - ex[j]);
    CHECK(overshoot > 1e-4);

    const NewtonResult r = newton_penalty_solve(s, ex, u0, cfg);
    for (std::size_t j = 1; j + 1 < r.u.size(); ++j)
        CHECK(r.u[j] - ex[j] <= 10.0 * cfg.eps_penalty);
    CHECK(r.iterations >= 1);
    CHECK_THROWS_AS(newton_penalty_solve(s, std::vector<double>(2), u0, cfg), std::invalid_argument);
}

TEST_CASE("run_solver bookkeeping")
{
    const Grid g = small_grid();
    const std::vector<double> times{1.0, 2.5};
    const SolutionField f = run_solver(reference_params(), g, SolverConfig{}, times);
    CHECK(f.snapshots.size() == 4);
    CHECK(f.snapshots.front().step == 0);
    CHECK(f.final_snapshot().step == g.n_steps);
    REQUIRE(f.snapshot_at(2.5) != nullptr);
    CHECK(f.snapshot_at(2.5)->step == 25);
    CHECK(f.snapshot_at(3.3) == nullptr);
    CHECK(f.sup_error.size() == g.n_steps + 1);
    CHECK(f.boundaries.size() == g.n_steps + 1);
    CHECK(f.newton_counts[0] == 0);
    for (std::size_t i = 0; i < f.m_matrix_ok.size(); ++i)
        CHECK(f.m_matrix_ok[i] == 1);
    for (std::size_t i = 1; i < f.newton_counts.size(); ++i)
        CHECK(f.newton_counts[i] >= 1);
}

TEST_CASE("run_solver is deterministic")
{
    const Grid g = small_grid(2.0);
    const SolutionField a = run_solver(reference_params(), g, SolverConfig{}, {});
    const SolutionField b = run_solver(reference_params(), g, SolverConfig{}, {});
    CHECK(a.final_snapshot().u == b.final_snapshot().u);
    CHECK(a.sup_error == b.sup_error);
    CHECK(a.boundaries.kappa_hat == b.boundaries.kappa_hat);
}

TEST_CASE("run_solver rejects bad requests")
{
    const std::vector<double> late{100.0};
    CHECK_THROWS_AS(run_solver(reference_params(), small_grid(), SolverConfig{}, late), std::invalid_argument);
    CHECK_THROWS_AS(run_solver(reference_params(), make_grid(-1.0, 5.0, 0.05, 0.1, 1.0), SolverConfig{}, {}),
                    GridError);
}

TEST_CASE("interpolate_row is exact for linear rows")
{
    const Grid g = small_grid();
    std::vector<double> row(g.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = 2.0 * g.xi(j) - 1.0;
    for (double x : {-4.99, -1.234, 0.0, 3.21, 4.999})
        CHECK(interpolate_row(row, g, x) == doctest::Approx(2.0 * x - 1.0).epsilon(1e-12));
    CHECK(interpolate_row(row, g, 9.0) == doctest::Approx(9.0));
    CHECK(interpolate_row(row, g, -9.0) == doctest::Approx(-11.0));
}
