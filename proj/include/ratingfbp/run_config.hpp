#pragma once

#include "ratingfbp/grid.hpp"
#include "ratingfbp/mc_oracle.hpp"
#include "ratingfbp/model.hpp"

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratingfbp {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double xi_min = -10.0;
    double xi_max = 10.0;
    double dxi = 0.01;
    double dt = 0.01;
    double t_final = 1500.0;
};

struct OutputSpec {
    std::vector<double> snapshots{0.0, 50.0, 100.0, 150.0};
    std::size_t tw_samples = 2001;
    std::size_t trace_stride = 1;  ///< write every k-th step to error.csv / boundaries.csv
};

/// Everything a CLI command needs. Defaults reproduce the reference setup
/// (delta = 0.03, sigma_h = 0.2, sigma_l = 0.3, gamma = 0.6, eps = 1e-8,
/// tol = 1e-4, dt = 0.01 on [-10, 10] with 1000 cells a side).
struct RunConfig {
    ModelParams model;
    GridSpec grid;
    SolverConfig solver;
    McConfig mc;
    double mc_pde_dt = 0.001;  ///< time step of the PDE solve that feeds the MC boundaries
    OutputSpec output;

    Grid make_solve_grid() const;
    Grid make_mc_grid() const;
};

/// INI-style text:
///
///   [model]   r delta sigma_h sigma_l gamma
///   [grid]    xi_min xi_max dxi dt t_final
///   [solver]  eps_penalty eps_heaviside tol_newton max_newton_iters
///   [mc]      n_paths dt_sim seed s0 maturity pde_dt
///   [output]  snapshots (comma list) tw_samples trace_stride
///
/// Missing keys keep their defaults; unknown sections or keys are rejected.
/// Every section is validated by its owning module. Throws ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Re-runs the module validators on an assembled config.
void validate_config(const RunConfig& cfg);

std::vector<double> parse_time_list(const std::string& text);

}  // namespace ratingfbp
