#include "ratingfbp/commands.hpp"

#include "ratingfbp/csv_io.hpp"
#include "ratingfbp/diagnostics.hpp"
#include "ratingfbp/fd_solver.hpp"
#include "ratingfbp/mc_oracle.hpp"
#include "ratingfbp/traveling_wave.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <optional>

namespace ratingfbp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

ValidatedParams checked_params(const RunConfig& cfg)
{
    validate_config(cfg);
    return validate_params(cfg.model);
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

json number_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

json report_json(const DiagnosticsReport& rep)
{
    json inv = json::array();
    for (const InvariantResult& r : rep.invariants) {
        inv.push_back({
            {"name", r.name},
            {"passed", r.passed},
            {"worst_violation", r.worst_violation},
            {"slack", r.slack},
            {"t", r.t},
            {"xi", number_or_null(r.xi)},
            {"description", r.description},
        });
    }
    return json{
        {"all_passed", rep.all_passed()},
        {"invariants", inv},
        {"newton",
         {{"min", rep.newton.min_iters},
          {"max", rep.newton.max_iters},
          {"mean", rep.newton.mean_iters},
          {"total", rep.newton.total_iters}}},
        {"sup_error", {{"initial", rep.sup_error_initial}, {"final", rep.sup_error_final}}},
    };
}

void print_report(const DiagnosticsReport& rep, std::ostream& out)
{
    out << std::left << std::setw(26) << "invariant" << std::setw(7) << "status" << std::setw(16)
        << "worst" << "slack\n";
    for (const InvariantResult& r : rep.invariants) {
        out << std::left << std::setw(26) << r.name << std::setw(7) << (r.passed ? "pass" : "FAIL")
            << std::setw(16) << std::setprecision(6) << r.worst_violation << r.slack << '\n';
    }
    out << "newton iterations: min " << rep.newton.min_iters << ", max " << rep.newton.max_iters
        << ", mean " << rep.newton.mean_iters << '\n';
    out << "sup error vs traveling wave: initial " << rep.sup_error_initial << ", final "
        << rep.sup_error_final << '\n';
}

}  // namespace

int cmd_tw(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
    const ValidatedParams p = checked_params(cfg);
    const TravelingWave tw = build_traveling_wave(p);
    ensure_dir(out_dir);

    const std::size_t n = cfg.output.tw_samples;
    const double a = cfg.grid.xi_min;
    const double b = cfg.grid.xi_max;
    CsvWriter csv(out_dir / "tw.csv", {"xi", "K", "u_tw", "dK"});
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = k + 1 == n ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
        csv.row({xi, tw_value(tw, xi), tw_u_value(tw, xi), tw_derivative(tw, xi)});
    }
    csv.close();

    const json meta{
        {"kappa_star", tw.kappa_star},
        {"eta_star", tw.eta_star},
        {"psi_inv_gamma", tw.psi_inv_gamma},
        {"c_l", tw.constants.c_l},
        {"c_h", tw.constants.c_h},
        {"coef_b", tw.coef_b},
        {"coef_c", tw.coef_c},
        {"coef_d", tw.coef_d},
        {"gamma", tw.gamma},
    };
    write_text_file(out_dir / "tw_meta.json", meta.dump(2) + "\n");
    log << "traveling wave: kappa* = " << tw.kappa_star << ", eta* = " << tw.eta_star << '\n';
    return exit_ok;
}

int cmd_solve(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
    const ValidatedParams p = checked_params(cfg);
    const TravelingWave tw = build_traveling_wave(p);
    const Grid grid = cfg.make_solve_grid();
    ensure_dir(out_dir);

    const SolutionField field = run_solver(p, grid, cfg.solver, cfg.output.snapshots);
    const DiagnosticsReport rep = check_invariants(field, tw);

    CsvWriter snaps(out_dir / "snapshots.csv", {"t", "xi", "u"});
    for (const Snapshot& s : field.snapshots) {
        const bool requested = s.step == 0 || std::any_of(cfg.output.snapshots.begin(), cfg.output.snapshots.end(),
                                                          [&](double t) {
                                                              return static_cast<std::size_t>(std::llround(
                                                                         t / grid.dt)) == s.step;
                                                          });
        if (!requested)
            continue;
        for (std::size_t j = 0; j < s.u.size(); ++j)
            snaps.row({s.t, grid.xi(j), s.u[j]});
    }
    snaps.close();

    const std::size_t stride = cfg.output.trace_stride;
    const std::size_t last = field.sup_error.size() - 1;
    CsvWriter err(out_dir / "error.csv", {"t", "sup_error"});
    CsvWriter bnd(out_dir / "boundaries.csv", {"t", "kappa_hat", "eta_hat"});
    for (std::size_t i = 0; i <= last; ++i) {
        if (i % stride != 0 && i != last)
            continue;
        err.row({field.boundaries.times[i], field.sup_error[i]});
        bnd.row({field.boundaries.times[i], field.boundaries.kappa_hat[i], field.boundaries.eta_hat[i]});
    }
    err.close();
    bnd.close();

    json diag = report_json(rep);
    diag["traveling_wave"] = {{"kappa_star", tw.kappa_star}, {"eta_star", tw.eta_star}};
    diag["final"] = {
        {"t", field.boundaries.times.back()},
        {"kappa_hat", field.boundaries.kappa_hat.back()},
        {"eta_hat", field.boundaries.eta_hat.back()},
        {"sup_error", field.sup_error.back()},
    };
    diag["grid"] = {
        {"xi_min", grid.xi_min}, {"xi_max", grid.xi_max}, {"dxi", grid.dxi()},
        {"dt", grid.dt},         {"n_steps", grid.n_steps},
    };
    write_text_file(out_dir / "diagnostics.json", diag.dump(2) + "\n");

    log << "solved " << grid.n_steps << " steps; final sup error " << field.sup_error.back()
        << "; invariants " << (rep.all_passed() ? "pass" : "FAIL") << '\n';
    return rep.all_passed() ? exit_ok : exit_invariant;
}

int cmd_mc(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
    const ValidatedParams p = checked_params(cfg);
    const TravelingWave tw = build_traveling_wave(p);
    const Grid grid = cfg.make_mc_grid();
    const double xi0 = initial_xi(p, cfg.mc);
    if (!(xi0 > grid.xi_min && xi0 < grid.xi_max))
        throw ConfigError("config: initial state xi0 = " + format_double(xi0) + " lies outside the grid");
    ensure_dir(out_dir);

    const SolutionField field = run_solver(p, grid, cfg.solver, {});
    const BoundarySchedule schedule(field.boundaries, tw);
    const McResult mc = price_bond_mc(p, schedule, cfg.mc);
    const double pde = std::exp(-p.r() * cfg.mc.maturity) *
                       interpolate_row(field.final_snapshot().u, grid, xi0);
    const McComparison cmp = compare_mc_pde(mc, pde);

    const json out{
        {"price", mc.price},
        {"std_error", mc.std_error},
        {"std_error_defined", mc.std_error_defined},
        {"n_paths", mc.n_paths},
        {"n_default", mc.n_default},
        {"n_migrations", mc.n_migrations},
        {"pde_price", pde},
        {"abs_diff", cmp.abs_diff},
        {"rel_diff", cmp.rel_diff},
        {"z_score", number_or_null(cmp.z_score)},
        {"s0", cfg.mc.s0},
        {"xi0", xi0},
        {"maturity", cfg.mc.maturity},
        {"dt_sim", cfg.mc.dt_sim},
        {"seed", cfg.mc.seed},
    };
    write_text_file(out_dir / "mc.json", out.dump(2) + "\n");
    log << "mc price " << mc.price << " +- " << mc.std_error << ", pde " << pde << ", z = " << cmp.z_score
        << '\n';
    return exit_ok;
}

int cmd_check(const RunConfig& cfg, std::ostream& out)
{
    const ValidatedParams p = checked_params(cfg);
    const TravelingWave tw = build_traveling_wave(p);
    const SolutionField field = run_solver(p, cfg.make_solve_grid(), cfg.solver, cfg.output.snapshots);
    const DiagnosticsReport rep = check_invariants(field, tw);
    print_report(rep, out);
    return rep.all_passed() ? exit_ok : exit_invariant;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rating-migration bond pricing: traveling wave, penalised FD solver, Monte Carlo check"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::vector<double> snapshots;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out-dir", out_dir, "Directory for output files");
        sub->add_option("--snapshots", snapshots, "Snapshot times, comma separated")->delimiter(',');
        sub->add_option("--seed", seed, "Monte Carlo seed");
    };
    CLI::App* tw = app.add_subcommand("tw", "Traveling-wave profile and constants");
    CLI::App* solve = app.add_subcommand("solve", "Time-dependent solve with boundary traces and diagnostics");
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo cross-check against the PDE price");
    CLI::App* check = app.add_subcommand("check", "Run the invariant suite on a fresh solve");
    for (CLI::App* sub : {tw, solve, mc, check})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!snapshots.empty())
            cfg.output.snapshots = snapshots;
        if (seed)
            cfg.mc.seed = *seed;
        validate_config(cfg);

        if (tw->parsed())
            return cmd_tw(cfg, out_dir, out);
        if (solve->parsed())
            return cmd_solve(cfg, out_dir, out);
        if (mc->parsed())
            return cmd_mc(cfg, out_dir, out);
        return cmd_check(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        err << "solve error: " << e.what() << '\n';
        return exit_solve;
    }
}

}  // namespace ratingfbp
