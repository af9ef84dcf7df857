#include "optoswitch/closedform.hpp"
#include "optoswitch/config.hpp"
#include "optoswitch/dataset_io.hpp"
#include "optoswitch/delay.hpp"
#include "optoswitch/model.hpp"
#include "optoswitch/oracle.hpp"
#include "optoswitch/response.hpp"
#include "optoswitch/selfcheck.hpp"
#include "optoswitch/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

namespace
{
constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_physics = 3;

using optoswitch::config::RunConfig;

struct CommonOpts
{
    std::string config_path;
    std::string out_path;
    std::string format;
    int grid = 0;
    std::optional<std::uint64_t> seed;
};

RunConfig load_config(const CommonOpts& opts, const std::string& mode)
{
    RunConfig cfg;
    if (!opts.config_path.empty())
        cfg = optoswitch::config::parse_config(opts.config_path);
    cfg.mode = mode;
    if (!opts.out_path.empty())
        cfg.out_path = opts.out_path;
    if (!opts.format.empty())
        cfg.format = opts.format;
    if (opts.grid > 0)
        cfg.points = opts.grid;
    if (opts.seed)
        cfg.seed = *opts.seed;
    return cfg;
}

void write_dataset(const optoswitch::sweep::Dataset& ds, const RunConfig& cfg,
                   const std::string& default_path)
{
    const std::string path = cfg.out_path.empty() ? default_path : cfg.out_path;
    if (cfg.format == "json")
        optoswitch::io::write_json(ds, path, cfg.precision);
    else
        optoswitch::io::write_csv(ds, path, cfg.precision);
    std::cout << "wrote " << path << " (" << ds.rows.size() << " rows)\n";
}

std::map<std::string, double> fixed_from(const RunConfig& cfg)
{
    return {{"kappa1", cfg.params.kappa1}, {"kappa2", cfg.params.kappa2},
            {"gamma_m", cfg.params.gamma_m}, {"n", cfg.params.n},
            {"G", cfg.params.G},           {"theta", cfg.drive.theta},
            {"eps_L", cfg.drive.eps_L},    {"eps_R", cfg.drive.eps_R},
            {"delta", 0.0}};
}

// min/max of every observable column, skipping sentinel-flagged rows.
void print_summary(const optoswitch::sweep::Dataset& ds)
{
    std::cout << std::setprecision(6) << std::fixed;
    for (std::size_t c = 0; c < ds.columns.size(); ++c)
    {
        const std::string& name = ds.columns[c];
        if (name.find("[flag]") != std::string::npos)
            continue;
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& row : ds.rows)
        {
            if (std::isnan(row[c]))
                continue;
            lo = std::min(lo, row[c]);
            hi = std::max(hi, row[c]);
        }
        std::cout << name << " min = " << lo << " max = " << hi << "\n";
    }
    std::cout.unsetf(std::ios::fixed);
}

int count_poles(const optoswitch::sweep::Dataset& ds)
{
    int poles = 0;
    for (std::size_t c = 0; c < ds.columns.size(); ++c)
        if (ds.columns[c] == "pole[flag]")
            for (const auto& row : ds.rows)
                poles += row[c] > 0.5 ? 1 : 0;
    return poles;
}

int cmd_spectrum(const RunConfig& cfg)
{
    optoswitch::sweep::SweepSpec spec;
    spec.axis1 = {"delta", cfg.delta_min, cfg.delta_max, cfg.points};
    spec.fixed = fixed_from(cfg);
    if (cfg.drive.eps_L > 0.0)
        spec.observables.insert(spec.observables.end(), {"R_l", "T_l"});
    if (cfg.drive.eps_R > 0.0)
        spec.observables.insert(spec.observables.end(), {"R_r", "T_r"});
    if (spec.observables.empty())
    {
        std::cerr << "error: both probe amplitudes are zero\n";
        return exit_config;
    }
    const auto ds = optoswitch::sweep::run_sweep(spec);
    if (count_poles(ds) == static_cast<int>(ds.rows.size()))
    {
        std::cerr << "error: every grid point sits on a response pole\n";
        return exit_physics;
    }
    print_summary(ds);
    write_dataset(ds, cfg, "spectrum.csv");
    return exit_ok;
}

int cmd_delay(const RunConfig& cfg)
{
    optoswitch::sweep::SweepSpec spec;
    spec.axis1 = {"delta", cfg.delta_min, cfg.delta_max, cfg.points};
    spec.fixed = fixed_from(cfg);
    spec.observables = {"tau_" + cfg.channel};
    optoswitch::delay::channel_from_name(cfg.channel); // validates
    const auto ds = optoswitch::sweep::run_sweep(spec);
    if (count_poles(ds) == static_cast<int>(ds.rows.size()))
    {
        std::cerr << "error: every grid point sits on a response pole\n";
        return exit_physics;
    }
    print_summary(ds);
    write_dataset(ds, cfg, "delay.csv");
    return exit_ok;
}

int cmd_sweep(const RunConfig& cfg)
{
    if (!cfg.sweep_spec)
    {
        std::cerr << "error: sweep mode needs a [sweep] section in the config\n";
        return exit_config;
    }
    const auto ds = optoswitch::sweep::run_sweep(*cfg.sweep_spec);
    print_summary(ds);
    write_dataset(ds, cfg, "sweep.csv");
    return exit_ok;
}

int cmd_figure(const RunConfig& cfg, const std::string& figure_id, int grid)
{
    const auto ds = optoswitch::sweep::figure_dataset(figure_id, grid);
    print_summary(ds);
    write_dataset(ds, cfg, figure_id + ".csv");
    return exit_ok;
}

int cmd_stability(const RunConfig& cfg)
{
    const auto rep = optoswitch::oracle::system_stability(cfg.params);
    std::cout << std::setprecision(12);
    std::cout << "eigenvalues (units of kappa1):\n";
    for (const auto& ev : rep.eigenvalues)
        std::cout << "  " << ev.real() << (ev.imag() < 0 ? " - " : " + ")
                  << std::abs(ev.imag()) << "i\n";
    std::cout << "max real part = " << rep.max_real_part << "\n";
    std::cout << "verdict: " << (rep.stable ? "stable" : "unstable") << "\n";

    const auto window = optoswitch::oracle::stable_g_window(cfg.params, 0.0, 5.0);
    if (window.empty())
        std::cout << "stable G window in [0, 5kappa]: empty\n";
    else
        for (const auto& [lo, hi] : window)
            std::cout << "stable G window: [" << lo << ", " << hi << "] kappa\n";
    return exit_ok;
}

int cmd_validate(const RunConfig& cfg)
{
    optoswitch::SteadyState ss;
    if (cfg.style == RunConfig::Style::Physical)
    {
        ss = optoswitch::model::steady_state(cfg.params, cfg.drive);
    }
    else if (cfg.params.g0 > 0.0)
    {
        ss.a1s = cfg.params.G / cfg.params.g0;
        ss.a2s = std::sqrt(cfg.params.n) * ss.a1s.real();
        ss.Delta1 = cfg.params.Delta0;
        ss.Delta2 = cfg.params.Delta0;
        ss.b_s = -optoswitch::Complex(0.0, cfg.params.g0) *
                 (std::norm(ss.a2s) - std::norm(ss.a1s)) /
                 optoswitch::Complex(cfg.params.gamma_m, cfg.params.omega_m);
    }
    else
    {
        ss.Delta1 = ss.Delta2 = cfg.params.Delta0;
    }
    const auto rep = optoswitch::model::validate_regime(cfg.params, ss);
    auto line = [](const char* name, const optoswitch::RegimeCheck& c) {
        std::cout << name << ": " << (c.ok ? "ok" : "violated")
                  << " (margin = " << c.margin << ")\n";
    };
    std::cout << std::setprecision(6);
    line("resolved_sideband", rep.resolved_sideband);
    line("high_Q", rep.high_Q);
    line("rwa_left", rep.rwa_left);
    line("rwa_right", rep.rwa_right);
    line("red_detuned_left", rep.red_detuned_left);
    line("red_detuned_right", rep.red_detuned_right);
    line("ratio_term_negligible", rep.ratio_term_negligible);
    return exit_ok;
}

int cmd_selfcheck(const RunConfig& cfg)
{
    const auto res =
        optoswitch::selfcheck::oracle_triangle(cfg.selfcheck_points, cfg.seed);
    std::cout << std::scientific << std::setprecision(3);
    std::cout << "points = " << res.points << "\n";
    std::cout << "max |closed form - linear solve| (relative) = "
              << res.max_dev_closed_vs_solve << "\n";
    std::cout << "max |linear solve - time domain| (relative) = "
              << res.max_dev_solve_vs_time << "\n";
    const bool ok =
        res.max_dev_closed_vs_solve < 1e-10 && res.max_dev_solve_vs_time < 1e-6;
    std::cout << (ok ? "selfcheck passed\n" : "selfcheck FAILED\n");
    return ok ? exit_ok : exit_physics;
}
} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Photon transport in a passive-active two-cavity optomechanical system"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string figure_id;
    app.add_option("--config", opts.config_path, "run configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", opts.out_path, "output dataset path");
    app.add_option("--format", opts.format, "output format (csv|json)");
    app.add_option("--grid", opts.grid, "grid points per axis override");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "selfcheck RNG seed");

    auto* sc_spectrum = app.add_subcommand("spectrum", "reflection/transmission spectra");
    auto* sc_delay = app.add_subcommand("delay", "group-delay spectrum");
    auto* sc_sweep = app.add_subcommand("sweep", "parameter-grid sweep from config");
    auto* sc_figure = app.add_subcommand("figure", "published figure dataset");
    sc_figure->add_option("id", figure_id, "figure id (fig2a..fig6)")->required();
    auto* sc_stability = app.add_subcommand("stability", "eigenvalue stability report");
    auto* sc_validate = app.add_subcommand("validate", "regime-assumption report");
    auto* sc_selfcheck = app.add_subcommand("selfcheck", "randomized oracle cross-check");

    for (auto* sc : app.get_subcommands({}))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0)
        opts.seed = seed_value;

    try
    {
        if (sc_spectrum->parsed())
            return cmd_spectrum(load_config(opts, "spectrum"));
        if (sc_delay->parsed())
            return cmd_delay(load_config(opts, "delay"));
        if (sc_sweep->parsed())
            return cmd_sweep(load_config(opts, "sweep"));
        if (sc_figure->parsed())
            return cmd_figure(load_config(opts, "figure"), figure_id, opts.grid);
        if (sc_stability->parsed())
            return cmd_stability(load_config(opts, "stability"));
        if (sc_validate->parsed())
            return cmd_validate(load_config(opts, "validate"));
        if (sc_selfcheck->parsed())
            return cmd_selfcheck(load_config(opts, "selfcheck"));
    }
    catch (const optoswitch::config::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const optoswitch::UnknownFigure& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const optoswitch::Error& e)
    {
        std::cerr << "physics error: " << e.what() << "\n";
        return exit_physics;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_physics;
    }
    return exit_ok;
}
