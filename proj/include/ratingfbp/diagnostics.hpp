#pragma once

#include "ratingfbp/fd_solver.hpp"
#include "ratingfbp/traveling_wave.hpp"

#include <string>
#include <vector>

namespace ratingfbp {

struct InvariantResult {
    std::string name;
    bool passed = true;
    double worst_violation = 0.0;  ///< raw excess over the ideal bound, before slack
    double slack = 0.0;
    double t = 0.0;                ///< location of the worst case
    double xi = 0.0;               ///< NaN when the invariant is not spatial
    std::string description;
};

struct NewtonStats {
    int min_iters = 0;
    int max_iters = 0;
    double mean_iters = 0.0;
    long long total_iters = 0;
};

struct DiagnosticsReport {
    std::vector<InvariantResult> invariants;
    double sup_error_initial = 0.0;
    double sup_error_final = 0.0;
    NewtonStats newton;

    bool all_passed() const noexcept;
    const InvariantResult* find(const std::string& name) const noexcept;
};

/// Names of every invariant evaluated by check_invariants, in report order.
const std::vector<std::string>& registered_invariants();

/// Evaluates the discrete solution properties on every stored snapshot and
/// the per-step series of `field`. Violations are reported, never thrown.
///
/// Spatial checks use slack 10 eps + 1e-8; boundary-trace checks allow one
/// grid cell; the sup-error series may rise by at most 1e-6 per step.
DiagnosticsReport check_invariants(const SolutionField& field, const TravelingWave& tw);

}  // namespace ratingfbp
