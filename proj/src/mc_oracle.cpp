#include "ratingfbp/mc_oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ratingfbp {

void validate_mc_config(const McConfig& cfg)
{
    if (cfg.n_paths < 1)
        throw std::invalid_argument("mc: n_paths must be >= 1");
    if (!(cfg.dt_sim > 0.0) || !std::isfinite(cfg.dt_sim))
        throw std::invalid_argument("mc: dt_sim must be > 0");
    if (!(cfg.s0 > 0.0) || !std::isfinite(cfg.s0))
        throw std::invalid_argument("mc: s0 must be > 0");
    if (!(cfg.maturity > 0.0) || !std::isfinite(cfg.maturity))
        throw std::invalid_argument("mc: maturity must be > 0");
}

BoundarySchedule::BoundarySchedule(BoundaryTrace trace, std::optional<TravelingWave> tail)
    : trace_(std::move(trace)), tail_(std::move(tail))
{
    const std::size_t n = trace_.size();
    if (n == 0 || trace_.kappa_hat.size() != n || trace_.eta_hat.size() != n)
        throw std::invalid_argument("BoundarySchedule: empty or ragged boundary trace");
    if (trace_.times.front() != 0.0)
        throw std::invalid_argument("BoundarySchedule: trace must start at time to maturity 0");
    if (!std::is_sorted(trace_.times.begin(), trace_.times.end()))
        throw std::invalid_argument("BoundarySchedule: trace times must be ascending");
    if (n > 1) {
        const double step = trace_.times.back() / static_cast<double>(n - 1);
        bool uniform = step > 0.0;
        for (std::size_t i = 0; uniform && i < n; ++i)
            uniform = std::abs(trace_.times[i] - step * static_cast<double>(i)) <= 1e-9 * step;
        if (uniform)
            uniform_step_ = step;
    }
}

BoundarySchedule BoundarySchedule::disabled()
{
    BoundarySchedule b;
    b.disabled_ = true;
    return b;
}

double BoundarySchedule::coverage() const noexcept
{
    if (disabled_ || tail_)
        return std::numeric_limits<double>::infinity();
    return trace_.times.back();
}

double BoundarySchedule::lookup(const std::vector<double>& values, double tail_value, double tau) const
{
    const std::vector<double>& ts = trace_.times;
    const double last = ts.back();
    if (tau < 0.0 && tau > -1e-12)
        tau = 0.0;
    if (tau < 0.0 || tau > last + 1e-12 * std::max(1.0, last)) {
        if (tau > last && tail_)
            return tail_value;
        std::ostringstream os;
        os << "BoundarySchedule: time to maturity " << tau << " outside trace coverage [0, " << last << "]";
        throw std::out_of_range(os.str());
    }
    if (ts.size() == 1 || tau >= last)
        return values.back();
    std::size_t lo = 0;
    if (uniform_step_ > 0.0) {
        lo = std::min(static_cast<std::size_t>(tau / uniform_step_), ts.size() - 2);
    } else {
        const auto it = std::upper_bound(ts.begin(), ts.end(), tau);
        lo = static_cast<std::size_t>(it - ts.begin()) - 1;
    }
    const std::size_t hi = lo + 1;
    const double w = (tau - ts[lo]) / (ts[hi] - ts[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
}

double BoundarySchedule::kappa(double tau) const
{
    if (disabled_)
        return -std::numeric_limits<double>::infinity();
    return lookup(trace_.kappa_hat, tail_ ? tail_->kappa_star : 0.0, tau);
}

double BoundarySchedule::eta(double tau) const
{
    if (disabled_)
        return -std::numeric_limits<double>::infinity();
    return lookup(trace_.eta_hat, tail_ ? tail_->eta_star : 0.0, tau);
}

std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index)
{
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed & 0xffffffffu),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(path_index & 0xffffffffu),
        static_cast<std::uint32_t>(path_index >> 32),
    };
    return std::mt19937_64(seq);
}

McResult price_bond_mc(const ValidatedParams& p, const BoundarySchedule& b, const McConfig& cfg)
{
    validate_mc_config(cfg);
    if (b.coverage() < cfg.maturity)
        throw std::out_of_range("price_bond_mc: boundary trace does not cover the maturity");

    McResult res;
    res.n_paths = cfg.n_paths;
    // Welford accumulation in path order
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < cfg.n_paths; ++i) {
        std::mt19937_64 rng = path_rng(cfg.seed, i);
        std::normal_distribution<double> normal;
        const PathOutcome o = simulate_path([&] { return normal(rng); }, p, b, cfg);
        const double k = static_cast<double>(i + 1);
        const double d = o.payoff - mean;
        mean += d / k;
        m2 += d * (o.payoff - mean);
        res.n_default += o.defaulted ? 1 : 0;
        res.n_migrations += o.migrations;
    }
    res.price = mean;
    if (cfg.n_paths > 1) {
        const double n = static_cast<double>(cfg.n_paths);
        res.std_error = std::sqrt(m2 / (n - 1.0) / n);
        res.std_error_defined = true;
    }
    return res;
}

McComparison compare_mc_pde(const McResult& mc, double pde_value) noexcept
{
    McComparison c{};
    c.mc_price = mc.price;
    c.pde_price = pde_value;
    c.abs_diff = std::abs(mc.price - pde_value);
    c.rel_diff = pde_value != 0.0 ? c.abs_diff / std::abs(pde_value)
                                  : std::numeric_limits<double>::infinity();
    c.z_score = (mc.std_error_defined && mc.std_error > 0.0)
                    ? c.abs_diff / mc.std_error
                    : (c.abs_diff == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
    return c;
}

}  // namespace ratingfbp
