#pragma once

#include "ratingfbp/boundaries.hpp"
#include "ratingfbp/model.hpp"
#include "ratingfbp/traveling_wave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace ratingfbp {

struct McConfig {
    std::size_t n_paths = 100000;
    double dt_sim = 0.0005;
    std::uint64_t seed = 20240611;
    double s0 = 1.8;
    double maturity = 1.0;
};

void validate_mc_config(const McConfig& cfg);

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
    bool std_error_defined = false;  ///< false when n_paths == 1
    std::size_t n_paths = 0;
    std::size_t n_default = 0;
    std::size_t n_migrations = 0;
};

/// Default and transit boundaries as functions of time to maturity, linearly
/// interpolated between trace points. Beyond the last trace time the optional
/// steady tail (kappa*, eta*) is used; without it such queries throw
/// std::out_of_range.
class BoundarySchedule {
public:
    explicit BoundarySchedule(BoundaryTrace trace, std::optional<TravelingWave> tail = std::nullopt);

    /// No default and permanent high rating: both boundaries at -infinity.
    static BoundarySchedule disabled();

    double kappa(double tau) const;
    double eta(double tau) const;
    double coverage() const noexcept;

private:
    BoundarySchedule() = default;
    double lookup(const std::vector<double>& values, double tail_value, double tau) const;

    BoundaryTrace trace_;
    std::optional<TravelingWave> tail_;
    bool disabled_ = false;
    double uniform_step_ = 0.0;  ///< > 0 when trace times are equally spaced
};

/// Frame coordinate of the initial state: log s0 + (r - delta) T.
inline double initial_xi(const ValidatedParams& p, const McConfig& cfg) noexcept
{
    return std::log(cfg.s0) + (p.r() - p.delta()) * cfg.maturity;
}

struct PathOutcome {
    double payoff = 0.0;   ///< discounted to calendar time 0
    bool defaulted = false;
    std::size_t migrations = 0;
};

/// One step of a simulated path, reported to an optional observer.
struct PathStep {
    double s;       ///< calendar time
    double xi;      ///< moving-frame coordinate after the step
    double sigma;   ///< volatility used for the step
    bool high_rating_after;
};

/// Simulates one path in the frame xi = log S + (r - delta)(T - s):
///   dxi = (delta - sigma^2/2) ds + sigma dW,
/// sigma = sigma_h while xi > eta_hat(T - s), sigma_l otherwise. The path
/// defaults at the first step with xi <= kappa_hat(T - s) and pays
/// S e^{-delta (T - s)} discounted by e^{-r s}; otherwise it pays
/// min(S_T, 1) e^{-r T}. `draw` returns standard normal variates.
template <class NormalSource>
PathOutcome simulate_path(NormalSource&& draw, const ValidatedParams& p, const BoundarySchedule& b,
                          const McConfig& cfg, std::vector<PathStep>* record = nullptr)
{
    const double T = cfg.maturity;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(T / cfg.dt_sim - 1e-9)));
    const double h = T / static_cast<double>(n);
    const double sqrt_h = std::sqrt(h);
    const double discount = std::exp(-p.r() * T);

    PathOutcome out;
    double xi = initial_xi(p, cfg);
    // In the default region u = e^xi, so the discounted cash S e^{-delta tau} e^{-r s}
    // collapses to e^{xi - r T}.
    if (xi <= b.kappa(T)) {
        out.defaulted = true;
        out.payoff = std::exp(xi - p.r() * T);
        return out;
    }
    bool high = xi > b.eta(T);
    for (std::size_t k = 1; k <= n; ++k) {
        const double sigma = high ? p.sigma_h() : p.sigma_l();
        xi += (p.delta() - 0.5 * sigma * sigma) * h + sigma * sqrt_h * draw();
        const double s = k == n ? T : static_cast<double>(k) * h;
        if (k == n) {
            if (record)
                record->push_back(PathStep{s, xi, sigma, high});
            out.payoff = discount * std::min(std::exp(xi), 1.0);
            return out;
        }
        const double tau = T - s;
        if (xi <= b.kappa(tau)) {
            if (record)
                record->push_back(PathStep{s, xi, sigma, high});
            out.defaulted = true;
            out.payoff = std::exp(xi - p.r() * T);
            return out;
        }
        const bool now_high = xi > b.eta(tau);
        if (now_high != high)
            ++out.migrations;
        high = now_high;
        if (record)
            record->push_back(PathStep{s, xi, sigma, high});
    }
    return out;
}

/// Per-path generator seeded from (seed, path index).
std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index);

/// Mean discounted payoff over cfg.n_paths independent paths. Deterministic
/// for a given seed; aggregation order follows the path index.
McResult price_bond_mc(const ValidatedParams& p, const BoundarySchedule& b, const McConfig& cfg);

struct McComparison {
    double mc_price;
    double pde_price;
    double abs_diff;
    double rel_diff;
    double z_score;  ///< |mc - pde| / std_error; NaN when std_error is 0 or undefined
};

McComparison compare_mc_pde(const McResult& mc, double pde_value) noexcept;

}  // namespace ratingfbp
