#include "ratingfbp/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ratingfbp {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw)
{
    const std::string s = trim(raw);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("config: '" + key + "' expects a number, got '" + raw + "'");
    return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& raw)
{
    const std::string s = trim(raw);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + raw + "'");
    return v;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using SectionTable = std::map<std::string, std::map<std::string, Setter>>;

const SectionTable& setters()
{
    static const SectionTable table{
        {"model",
         {
             {"r", [](RunConfig& c, const std::string& v) { c.model.r = to_double("model.r", v); }},
             {"delta", [](RunConfig& c, const std::string& v) { c.model.delta = to_double("model.delta", v); }},
             {"sigma_h", [](RunConfig& c, const std::string& v) { c.model.sigma_h = to_double("model.sigma_h", v); }},
             {"sigma_l", [](RunConfig& c, const std::string& v) { c.model.sigma_l = to_double("model.sigma_l", v); }},
             {"gamma", [](RunConfig& c, const std::string& v) { c.model.gamma = to_double("model.gamma", v); }},
         }},
        {"grid",
         {
             {"xi_min", [](RunConfig& c, const std::string& v) { c.grid.xi_min = to_double("grid.xi_min", v); }},
             {"xi_max", [](RunConfig& c, const std::string& v) { c.grid.xi_max = to_double("grid.xi_max", v); }},
             {"dxi", [](RunConfig& c, const std::string& v) { c.grid.dxi = to_double("grid.dxi", v); }},
             {"dt", [](RunConfig& c, const std::string& v) { c.grid.dt = to_double("grid.dt", v); }},
             {"t_final", [](RunConfig& c, const std::string& v) { c.grid.t_final = to_double("grid.t_final", v); }},
         }},
        {"solver",
         {
             {"eps_penalty",
              [](RunConfig& c, const std::string& v) { c.solver.eps_penalty = to_double("solver.eps_penalty", v); }},
             {"eps_heaviside",
              [](RunConfig& c, const std::string& v) { c.solver.eps_heaviside = to_double("solver.eps_heaviside", v); }},
             {"tol_newton",
              [](RunConfig& c, const std::string& v) { c.solver.tol_newton = to_double("solver.tol_newton", v); }},
             {"max_newton_iters",
              [](RunConfig& c, const std::string& v) {
                  const auto k = to_unsigned("solver.max_newton_iters", v);
                  if (k > 1000000)
                      throw ConfigError("config: solver.max_newton_iters too large");
                  c.solver.max_newton_iters = static_cast<int>(k);
              }},
         }},
        {"mc",
         {
             {"n_paths", [](RunConfig& c, const std::string& v) { c.mc.n_paths = to_unsigned("mc.n_paths", v); }},
             {"dt_sim", [](RunConfig& c, const std::string& v) { c.mc.dt_sim = to_double("mc.dt_sim", v); }},
             {"seed", [](RunConfig& c, const std::string& v) { c.mc.seed = to_unsigned("mc.seed", v); }},
             {"s0", [](RunConfig& c, const std::string& v) { c.mc.s0 = to_double("mc.s0", v); }},
             {"maturity", [](RunConfig& c, const std::string& v) { c.mc.maturity = to_double("mc.maturity", v); }},
             {"pde_dt", [](RunConfig& c, const std::string& v) { c.mc_pde_dt = to_double("mc.pde_dt", v); }},
         }},
        {"output",
         {
             {"snapshots", [](RunConfig& c, const std::string& v) { c.output.snapshots = parse_time_list(v); }},
             {"tw_samples",
              [](RunConfig& c, const std::string& v) { c.output.tw_samples = to_unsigned("output.tw_samples", v); }},
             {"trace_stride",
              [](RunConfig& c, const std::string& v) {
                  c.output.trace_stride = to_unsigned("output.trace_stride", v);
              }},
         }},
    };
    return table;
}

}  // namespace

std::vector<double> parse_time_list(const std::string& text)
{
    std::vector<double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (trim(item).empty())
            continue;
        out.push_back(to_double("snapshots", item));
    }
    return out;
}

Grid RunConfig::make_solve_grid() const
{
    return make_grid(grid.xi_min, grid.xi_max, grid.dxi, grid.dt, grid.t_final);
}

Grid RunConfig::make_mc_grid() const
{
    return make_grid(grid.xi_min, grid.xi_max, grid.dxi, mc_pde_dt, mc.maturity);
}

void validate_config(const RunConfig& cfg)
{
    try {
        validate_params(cfg.model);
        validate_solver_config(cfg.solver);
        cfg.make_solve_grid();
        validate_mc_config(cfg.mc);
        cfg.make_mc_grid();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.output.tw_samples < 2)
        throw ConfigError("config: output.tw_samples must be >= 2");
    if (cfg.output.trace_stride < 1)
        throw ConfigError("config: output.trace_stride must be >= 1");
    for (double t : cfg.output.snapshots)
        if (!(t >= 0.0) || t > cfg.grid.t_final)
            throw ConfigError("config: snapshot time " + std::to_string(t) + " outside [0, t_final]");
}

RunConfig parse_config(std::istream& in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    RunConfig cfg;
    const SectionTable& table = setters();
    for (const auto& [section, body] : tree) {
        const auto sec = table.find(section);
        if (sec == table.end())
            throw ConfigError("config: unknown section or top-level key '" + section + "'");
        for (const auto& [key, node] : body) {
            const auto it = sec->second.find(key);
            if (it == sec->second.end())
                throw ConfigError("config: unknown key '" + section + "." + key + "'");
            it->second(cfg, node.get_value<std::string>());
        }
    }
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path.string());
    return parse_config(in);
}

}  // namespace ratingfbp
