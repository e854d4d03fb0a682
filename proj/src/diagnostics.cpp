#include "ratingfbp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratingfbp {

namespace {

constexpr double not_spatial = std::numeric_limits<double>::quiet_NaN();

/// Tracks the largest violation amount seen and where it happened.
struct Worst {
    double amount = 0.0;
    double t = 0.0;
    double xi = not_spatial;
    bool seen = false;

    void offer(double a, double at_t, double at_xi)
    {
        if (!seen || a > amount) {
            amount = a;
            t = at_t;
            xi = at_xi;
            seen = true;
        }
    }
};

InvariantResult finish(const std::string& name, const std::string& description, const Worst& w,
                       double slack, bool strict = false)
{
    InvariantResult r;
    r.name = name;
    r.description = description;
    r.slack = slack;
    r.worst_violation = w.seen ? std::max(0.0, w.amount) : 0.0;
    r.t = w.t;
    r.xi = w.xi;
    r.passed = !w.seen || (strict ? w.amount < 0.0 : w.amount <= slack);
    return r;
}

}  // namespace

bool DiagnosticsReport::all_passed() const noexcept
{
    return std::all_of(invariants.begin(), invariants.end(),
                       [](const InvariantResult& r) { return r.passed; });
}

const InvariantResult* DiagnosticsReport::find(const std::string& name) const noexcept
{
    for (const InvariantResult& r : invariants)
        if (r.name == name)
            return &r;
    return nullptr;
}

const std::vector<std::string>& registered_invariants()
{
    static const std::vector<std::string> names{
        "bounds",
        "monotone_in_xi",
        "v_nonincreasing_in_xi",
        "nonincreasing_in_time",
        "v_concavity",
        "penalty_consistency",
        "m_matrix",
        "kappa_nonincreasing",
        "eta_nonincreasing",
        "boundary_order",
        "boundary_separation",
        "initial_boundaries",
        "sup_error_nonincreasing",
    };
    return names;
}

DiagnosticsReport check_invariants(const SolutionField& field, const TravelingWave& tw)
{
    const Grid& grid = field.grid;
    const double h = grid.dxi();
    const double eps = field.config.eps_penalty;
    const double slack = 10.0 * eps + 1e-8;
    const std::size_t n = grid.size();

    std::vector<double> ex(n);
    for (std::size_t j = 0; j < n; ++j)
        ex[j] = std::exp(grid.xi(j));

    Worst bounds, mono_u, mono_v, in_time, concave, penalty, m_matrix;
    const Snapshot* prev = nullptr;
    for (const Snapshot& s : field.snapshots) {
        const std::vector<double>& u = s.u;
        if (u.size() != n)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double xi = grid.xi(j);
            bounds.offer(std::max(-u[j], u[j] - std::min(1.0, ex[j])), s.t, xi);
            penalty.offer(u[j] - ex[j], s.t, xi);
            if (j + 1 < n) {
                mono_u.offer(u[j] - u[j + 1], s.t, xi);
                mono_v.offer(u[j + 1] / ex[j + 1] - u[j] / ex[j], s.t, xi);
            }
            if (j > 0 && j + 1 < n) {
                const double vm = u[j - 1] / ex[j - 1];
                const double v0 = u[j] / ex[j];
                const double vp = u[j + 1] / ex[j + 1];
                concave.offer((vp - 2.0 * v0 + vm) + 0.5 * h * (vp - vm), s.t, xi);
            }
            if (prev != nullptr && prev->u.size() == n)
                in_time.offer(u[j] - prev->u[j], s.t, xi);
        }
        prev = &s;
    }
    for (std::size_t i = 1; i < field.time_increase.size(); ++i)
        in_time.offer(field.time_increase[i], grid.t(i), not_spatial);
    for (std::size_t i = 0; i < field.penalty_excess.size(); ++i)
        penalty.offer(field.penalty_excess[i], grid.t(i), not_spatial);
    std::size_t m_failures = 0;
    double first_m_failure = 0.0;
    for (std::size_t i = 0; i < field.m_matrix_ok.size(); ++i) {
        if (!field.m_matrix_ok[i]) {
            if (m_failures == 0)
                first_m_failure = grid.t(i);
            ++m_failures;
        }
    }
    if (!field.m_matrix_ok.empty())
        m_matrix.offer(static_cast<double>(m_failures), first_m_failure, not_spatial);

    const BoundaryTrace& tr = field.boundaries;
    Worst kappa_mono, eta_mono, order, separation, initial;
    if (tr.size() > 0) {
        const double sep0 = tr.eta_hat[0] - tr.kappa_hat[0];
        const double floor = std::min(sep0, tw.psi_inv_gamma);
        for (std::size_t i = 0; i < tr.size(); ++i) {
            order.offer(tr.kappa_hat[i] - tr.eta_hat[i], tr.times[i], tr.kappa_hat[i]);
            separation.offer(floor - (tr.eta_hat[i] - tr.kappa_hat[i]), tr.times[i], tr.kappa_hat[i]);
            if (i + 1 < tr.size()) {
                kappa_mono.offer(tr.kappa_hat[i + 1] - tr.kappa_hat[i], tr.times[i + 1], tr.kappa_hat[i + 1]);
                eta_mono.offer(tr.eta_hat[i + 1] - tr.eta_hat[i], tr.times[i + 1], tr.eta_hat[i + 1]);
            }
        }
        if (tr.times[0] == 0.0) {
            const double dk = std::abs(tr.kappa_hat[0]);
            const double de = std::abs(tr.eta_hat[0] - std::log(1.0 / tw.gamma));
            initial.offer(std::max(dk, de), 0.0, dk >= de ? tr.kappa_hat[0] : tr.eta_hat[0]);
        }
    }

    Worst err_mono;
    for (std::size_t i = 1; i < field.sup_error.size(); ++i)
        err_mono.offer(field.sup_error[i] - field.sup_error[i - 1], grid.t(i), not_spatial);

    DiagnosticsReport rep;
    rep.invariants = {
        finish("bounds", "0 <= u <= min(1, e^xi)", bounds, slack),
        finish("monotone_in_xi", "u non-decreasing in xi", mono_u, slack),
        finish("v_nonincreasing_in_xi", "e^{-xi} u non-increasing in xi", mono_v, slack),
        finish("nonincreasing_in_time", "u non-increasing in t", in_time, slack),
        finish("v_concavity", "dxi^2 (D2 v + D0 v) <= 0", concave, slack),
        finish("penalty_consistency", "(u - e^xi)^+ <= 10 eps", penalty, 10.0 * eps),
        finish("m_matrix", "every assembled system is an M-matrix (count of failures)", m_matrix, 0.0),
        finish("kappa_nonincreasing", "default boundary non-increasing (one cell)", kappa_mono, h),
        finish("eta_nonincreasing", "transit boundary non-increasing (one cell)", eta_mono, h),
        finish("boundary_order", "kappa_hat < eta_hat", order, 0.0, true),
        finish("boundary_separation", "eta_hat - kappa_hat >= min(initial, Psi^{-1}(gamma)) - one cell",
               separation, h),
        finish("initial_boundaries", "kappa_hat(0) = 0, eta_hat(0) = log(1/gamma) within one cell",
               initial, h),
        finish("sup_error_nonincreasing", "sup error vs traveling wave non-increasing (1e-6 per step)",
               err_mono, 1e-6),
    };

    if (!field.sup_error.empty()) {
        rep.sup_error_initial = field.sup_error.front();
        rep.sup_error_final = field.sup_error.back();
    }
    if (field.newton_counts.size() > 1) {
        NewtonStats st;
        st.min_iters = std::numeric_limits<int>::max();
        for (std::size_t i = 1; i < field.newton_counts.size(); ++i) {
            const int k = field.newton_counts[i];
            st.min_iters = std::min(st.min_iters, k);
            st.max_iters = std::max(st.max_iters, k);
            st.total_iters += k;
        }
        st.mean_iters = static_cast<double>(st.total_iters) /
                        static_cast<double>(field.newton_counts.size() - 1);
        rep.newton = st;
    }
    return rep;
}

}  // namespace ratingfbp
