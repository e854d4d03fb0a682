#pragma once

#include "ratingfbp/run_config.hpp"

#include <filesystem>
#include <ostream>

namespace ratingfbp {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_config = 2,
    exit_solve = 3,
    exit_invariant = 4,
    exit_io = 5,
};

/// tw.csv (xi, K, u_tw, dK) and tw_meta.json.
int cmd_tw(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// snapshots.csv, error.csv, boundaries.csv and diagnostics.json.
/// Returns exit_invariant if any invariant fails.
int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// mc.json: Monte Carlo price against the PDE value at (s0, maturity).
int cmd_mc(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Fresh solve plus the invariant table on `out`; exit_ok iff all pass.
int cmd_check(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point: subcommands tw, solve, mc, check with
/// --config, --out-dir, --snapshots and --seed. Maps errors to ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ratingfbp
