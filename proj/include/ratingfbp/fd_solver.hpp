#pragma once

#include "ratingfbp/boundaries.hpp"
#include "ratingfbp/grid.hpp"
#include "ratingfbp/model.hpp"
#include "ratingfbp/tridiagonal.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ratingfbp {

/// u(xi, 0) = min(1, e^xi) on the grid nodes.
std::vector<double> initial_condition(const Grid& grid);

/// Coefficient of du/dxi in the u-frame operator: delta - sigma^2 / 2.
/// Non-negative values are discretised with a forward difference,
/// negative ones with a backward difference.
inline double convection_coefficient(double sigma, double delta) noexcept
{
    return delta - 0.5 * sigma * sigma;
}

/// Implicit upwind system for one time step with sigma frozen at u_prev.
///
/// Interior row j:
///   (U_j - u_prev_j)/dt = sigma_j^2/2 (U_{j+1} - 2U_j + U_{j-1})/dxi^2 + b_j D_up U_j
/// rearranged so rhs_j = u_prev_j / dt. Boundary rows hold the Dirichlet data
/// u(xi_min) = e^{xi_min} and u(xi_max) = 1. The penalty term is not included.
TridiagonalSystem assemble_system(std::span<const double> u_prev,
                                  const Grid& grid,
                                  const ValidatedParams& p,
                                  const SolverConfig& cfg);

struct NewtonResult {
    std::vector<double> u;
    int iterations = 0;
};

class NewtonError : public std::runtime_error {
public:
    NewtonError(const std::string& what, std::vector<double> last_iterate, double last_change)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)), last_change_(last_change)
    {
    }
    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double last_change() const noexcept { return last_change_; }

private:
    std::vector<double> last_iterate_;
    double last_change_;
};

/// Solves A U + eps^{-1} (U - obstacle)^+ = rhs by the active-set Newton
/// iteration, starting from u_start.
///
/// Each iterate solves (A + eps^{-1} P) U^k = rhs + eps^{-1} P obstacle with P
/// the indicator of U^{k-1} > obstacle on interior rows. Stops when
/// |U^k - U^{k-1}|_inf / max(1, |U^{k-1}|_inf) < tol_newton. Throws NewtonError
/// after max_newton_iters iterations.
NewtonResult newton_penalty_solve(const TridiagonalSystem& sys,
                                  std::span<const double> obstacle,
                                  std::span<const double> u_start,
                                  const SolverConfig& cfg);

struct Snapshot {
    std::size_t step;
    double t;
    std::vector<double> u;
};

/// Output of run_solver. Full rows are kept only for snapshots; the per-step
/// series below have one entry per time level i = 0..n_steps.
struct SolutionField {
    Grid grid;
    SolverConfig config;
    std::vector<Snapshot> snapshots;  ///< ascending in step; always holds t = 0 and t_final
    BoundaryTrace boundaries;
    std::vector<double> sup_error;       ///< |U_i - e^xi K|_inf
    std::vector<int> newton_counts;      ///< 0 at i = 0
    std::vector<double> time_increase;   ///< max_j (U_{i,j} - U_{i-1,j}); 0 at i = 0
    std::vector<double> penalty_excess;  ///< max_j (U_{i,j} - e^{xi_j})^+
    std::vector<std::uint8_t> m_matrix_ok;  ///< structural check of A_i; 1 at i = 0

    const Snapshot& final_snapshot() const { return snapshots.back(); }
    /// Snapshot stored for the step nearest to t, or nullptr.
    const Snapshot* snapshot_at(double t) const noexcept;
};

class SolveError : public std::runtime_error {
public:
    SolveError(std::size_t step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Marches the penalised scheme over grid.n_steps steps.
///
/// snapshot_times are rounded to the nearest step and must lie in
/// [0, t_final]. The traveling wave is built internally for the error series
/// and the domain check. Throws SolveError carrying the failing step.
SolutionField run_solver(const ValidatedParams& p,
                         const Grid& grid,
                         const SolverConfig& cfg,
                         std::span<const double> snapshot_times);

/// Linear interpolation of a grid row at xi (clamped to the domain).
double interpolate_row(std::span<const double> u_row, const Grid& grid, double xi);

}  // namespace ratingfbp
