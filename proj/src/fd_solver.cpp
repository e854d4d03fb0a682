#include "ratingfbp/fd_solver.hpp"

#include "ratingfbp/traveling_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace ratingfbp {

std::vector<double> initial_condition(const Grid& grid)
{
    std::vector<double> u(grid.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = std::min(1.0, std::exp(grid.xi(j)));
    return u;
}

namespace {

std::vector<double> exp_nodes(const Grid& grid)
{
    std::vector<double> ex(grid.size());
    for (std::size_t j = 0; j < ex.size(); ++j)
        ex[j] = std::exp(grid.xi(j));
    return ex;
}

// ex holds e^{xi_j}; sys must already have grid.size() rows
void assemble_into(TridiagonalSystem& sys,
                   std::span<const double> u_prev,
                   std::span<const double> ex,
                   const Grid& grid,
                   const ValidatedParams& p,
                   const SolverConfig& cfg)
{
    const std::size_t n = grid.size();
    const double h = grid.dxi();
    const double inv_h2 = 1.0 / (h * h);
    const double inv_dt = 1.0 / grid.dt;
    const double sh = p.sigma_h();
    const double jump = p.sigma_l() - p.sigma_h();

    sys.lower[0] = 0.0;
    sys.diag[0] = 1.0;
    sys.upper[0] = 0.0;
    sys.rhs[0] = ex[0];
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double sigma =
            sh + jump * smoothed_heaviside(u_prev[j] - p.gamma() * ex[j], cfg.eps_heaviside);
        const double diffusion = 0.5 * sigma * sigma * inv_h2;
        const double b = convection_coefficient(sigma, p.delta());
        double lo = -diffusion;
        double up = -diffusion;
        double dg = inv_dt + 2.0 * diffusion;
        if (b >= 0.0) {
            up -= b / h;
            dg += b / h;
        } else {
            lo += b / h;
            dg -= b / h;
        }
        sys.lower[j] = lo;
        sys.diag[j] = dg;
        sys.upper[j] = up;
        sys.rhs[j] = u_prev[j] * inv_dt;
    }
    sys.lower[n - 1] = 0.0;
    sys.diag[n - 1] = 1.0;
    sys.upper[n - 1] = 0.0;
    sys.rhs[n - 1] = 1.0;
}

double sup_norm(std::span<const double> x) noexcept
{
    double m = 0.0;
    for (double v : x)
        m = std::max(m, std::abs(v));
    return m;
}

/// Reusable buffers for the active-set Newton iteration.
class PenaltyNewton {
public:
    explicit PenaltyNewton(std::size_t n) : diag_(n), rhs_(n), next_(n), scratch_(n) {}

    /// Iterates in place on u (which holds the start value on entry).
    int solve(const TridiagonalSystem& sys,
              std::span<const double> obstacle,
              std::vector<double>& u,
              const SolverConfig& cfg)
    {
        const std::size_t n = sys.size();
        const double inv_eps = 1.0 / cfg.eps_penalty;
        double change = 0.0;
        for (int k = 1; k <= cfg.max_newton_iters; ++k) {
            std::copy(sys.diag.begin(), sys.diag.end(), diag_.begin());
            std::copy(sys.rhs.begin(), sys.rhs.end(), rhs_.begin());
            for (std::size_t j = 1; j + 1 < n; ++j) {
                if (u[j] - obstacle[j] > 0.0) {
                    diag_[j] += inv_eps;
                    rhs_[j] += inv_eps * obstacle[j];
                }
            }
            thomas_solve(sys.lower, diag_, sys.upper, rhs_, next_, scratch_);

            double diff = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                diff = std::max(diff, std::abs(next_[j] - u[j]));
            change = diff / std::max(1.0, sup_norm(u));
            u.swap(next_);
            if (change < cfg.tol_newton)
                return k;
        }
        std::ostringstream os;
        os << "newton_penalty_solve: no convergence after " << cfg.max_newton_iters
           << " iterations (last relative change " << change << ")";
        throw NewtonError(os.str(), u, change);
    }

private:
    std::vector<double> diag_;
    std::vector<double> rhs_;
    std::vector<double> next_;
    std::vector<double> scratch_;
};

}  // namespace

TridiagonalSystem assemble_system(std::span<const double> u_prev,
                                  const Grid& grid,
                                  const ValidatedParams& p,
                                  const SolverConfig& cfg)
{
    validate_grid(grid);
    if (u_prev.size() != grid.size())
        throw std::invalid_argument("assemble_system: u_prev length does not match grid");
    validate_solver_config(cfg);
    TridiagonalSystem sys(grid.size());
    const std::vector<double> ex = exp_nodes(grid);
    assemble_into(sys, u_prev, ex, grid, p, cfg);
    return sys;
}

NewtonResult newton_penalty_solve(const TridiagonalSystem& sys,
                                  std::span<const double> obstacle,
                                  std::span<const double> u_start,
                                  const SolverConfig& cfg)
{
    validate_solver_config(cfg);
    if (obstacle.size() != sys.size() || u_start.size() != sys.size())
        throw std::invalid_argument("newton_penalty_solve: length mismatch");
    NewtonResult out;
    out.u.assign(u_start.begin(), u_start.end());
    PenaltyNewton newton(sys.size());
    out.iterations = newton.solve(sys, obstacle, out.u, cfg);
    return out;
}

const Snapshot* SolutionField::snapshot_at(double t) const noexcept
{
    if (!(t >= 0.0))
        return nullptr;
    const auto step = static_cast<std::size_t>(std::llround(t / grid.dt));
    for (const Snapshot& s : snapshots)
        if (s.step == step)
            return &s;
    return nullptr;
}

SolutionField run_solver(const ValidatedParams& p,
                         const Grid& grid,
                         const SolverConfig& cfg,
                         std::span<const double> snapshot_times)
{
    validate_grid(grid);
    validate_solver_config(cfg);
    const TravelingWave tw = build_traveling_wave(p);
    validate_domain(grid, tw);

    std::set<std::size_t> wanted{0, grid.n_steps};
    for (double t : snapshot_times) {
        if (!(t >= 0.0) || t > grid.t_final() + 1e-9 * std::max(1.0, grid.t_final())) {
            std::ostringstream os;
            os << "run_solver: snapshot time " << t << " outside [0, " << grid.t_final() << "]";
            throw std::invalid_argument(os.str());
        }
        wanted.insert(std::min<std::size_t>(grid.n_steps,
                                            static_cast<std::size_t>(std::llround(t / grid.dt))));
    }

    const std::size_t n = grid.size();
    const std::vector<double> ex = exp_nodes(grid);
    std::vector<double> u_tw(n);
    for (std::size_t j = 0; j < n; ++j)
        u_tw[j] = tw_u_value(tw, grid.xi(j));
    const double tol_b = default_boundary_tolerance(cfg.eps_penalty);

    SolutionField field;
    field.grid = grid;
    field.config = cfg;
    const std::size_t levels = grid.n_steps + 1;
    field.boundaries.times.reserve(levels);
    field.boundaries.kappa_hat.reserve(levels);
    field.boundaries.eta_hat.reserve(levels);
    field.sup_error.reserve(levels);
    field.newton_counts.reserve(levels);
    field.time_increase.reserve(levels);
    field.penalty_excess.reserve(levels);
    field.m_matrix_ok.reserve(levels);

    std::vector<double> u = initial_condition(grid);
    std::vector<double> u_next(n);

    auto record = [&](std::size_t i, std::span<const double> row, int iters, double increase, bool m_ok) {
        double excess = 0.0;
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            excess = std::max(excess, row[j] - ex[j]);
            err = std::max(err, std::abs(row[j] - u_tw[j]));
        }
        double kappa = 0.0;
        double eta = 0.0;
        try {
            kappa = extract_default_boundary(row, grid, tol_b);
            eta = extract_transit_boundary(row, grid, p.gamma());
        } catch (const BoundaryError& e) {
            throw SolveError(i, "step " + std::to_string(i) + ": " + e.what());
        }
        field.boundaries.push_back(grid.t(i), kappa, eta);
        field.sup_error.push_back(err);
        field.newton_counts.push_back(iters);
        field.time_increase.push_back(increase);
        field.penalty_excess.push_back(excess);
        field.m_matrix_ok.push_back(m_ok ? 1 : 0);
        if (wanted.count(i))
            field.snapshots.push_back(Snapshot{i, grid.t(i), std::vector<double>(row.begin(), row.end())});
    };

    record(0, u, 0, 0.0, true);

    TridiagonalSystem sys(n);
    PenaltyNewton newton(n);
    for (std::size_t i = 1; i <= grid.n_steps; ++i) {
        assemble_into(sys, u, ex, grid, p, cfg);
        const bool m_ok = check_m_matrix(sys);
        std::copy(u.begin(), u.end(), u_next.begin());
        int iters = 0;
        try {
            iters = newton.solve(sys, ex, u_next, cfg);
        } catch (const NewtonError& e) {
            throw SolveError(i, "step " + std::to_string(i) + ": " + e.what());
        } catch (const ZeroPivotError& e) {
            throw SolveError(i, "step " + std::to_string(i) + ": " + e.what());
        }
        double increase = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            increase = std::max(increase, u_next[j] - u[j]);
        record(i, u_next, iters, increase, m_ok);
        u.swap(u_next);
    }
    return field;
}

double interpolate_row(std::span<const double> u_row, const Grid& grid, double xi)
{
    if (u_row.size() != grid.size())
        throw std::invalid_argument("interpolate_row: length mismatch");
    const double x = std::clamp(xi, grid.xi_min, grid.xi_max);
    const double h = grid.dxi();
    auto j = static_cast<std::size_t>(std::floor((x - grid.xi_min) / h));
    j = std::min(j, grid.n_space - 1);
    const double w = (x - grid.xi(j)) / h;
    return (1.0 - w) * u_row[j] + w * u_row[j + 1];
}

}  // namespace ratingfbp
