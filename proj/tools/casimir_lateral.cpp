// Command-line front end: single-point evaluation, wavelength sweeps,
// peak/valley transition search, and retarded-vs-vdW phase comparison.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "casimir/output.hpp"

namespace {

using namespace casimir;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--config", args.config_path, "JSON configuration file")
        ->required();
    cmd->add_option("--out", args.out_path,
                    "output path (overrides config; default stdout)");
    cmd->add_option("--format", args.format, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
}

RunConfig load(const CommonArgs& args, double default_rel_tol)
{
    RunConfig cfg = parse_config_file(args.config_path);
    if (!cfg.quad_rel_tol_set) cfg.quad.rel_tol = default_rel_tol;
    if (!args.out_path.empty()) cfg.output_path = args.out_path;
    if (args.format == "csv") cfg.format = OutputFormat::Csv;
    if (args.format == "json") cfg.format = OutputFormat::Json;
    return cfg;
}

SweepRow eval_point(const RunConfig& cfg, EvalMode mode, double lambda)
{
    SweepRow row;
    row.lambda_over_z0 = lambda;
    const Geometry geom = cfg.geometry(lambda);
    row.v = v_components(mode, cfg.particle(), cfg.surface(), geom, cfg.quad);
    const auto [amp, delta] = amplitude_phase(row.v);
    row.amplitude = amp;
    row.delta = delta;
    row.regime = classify(delta);
    row.x_eq = equilibrium_position(geom, delta);
    return row;
}

int run_eval(const CommonArgs& args)
{
    const RunConfig cfg = load(args, 1e-8);
    if (!cfg.lambda_c_over_z0)
        throw ConfigError("eval requires geometry.lambda_c_over_z0");
    const double omega_ref =
        reference_frequency(cfg.particle(), cfg.surface(), cfg.z0());
    const SweepRow row = eval_point(cfg, cfg.mode, *cfg.lambda_c_over_z0);
    write_output(cfg.output_path,
                 cfg.format == OutputFormat::Csv
                     ? render_eval_csv(row, cfg, omega_ref)
                     : render_eval_json(row, cfg, omega_ref));
    return 0;
}

int run_sweep(const CommonArgs& args)
{
    const RunConfig cfg = load(args, 1e-6);
    SweepRequest req;
    req.mode = cfg.mode;
    req.lambda_min = cfg.sweep_min;
    req.lambda_max = cfg.sweep_max;
    req.points = cfg.sweep_points;
    const auto rows = sweep(cfg.particle(), cfg.surface(), cfg.z0(),
                            cfg.amplitude(), req, cfg.quad);
    const double omega_ref =
        reference_frequency(cfg.particle(), cfg.surface(), cfg.z0());
    write_output(cfg.output_path,
                 cfg.format == OutputFormat::Csv
                     ? render_sweep_csv(rows, cfg, omega_ref)
                     : render_sweep_json(rows, cfg, omega_ref));
    for (const auto& r : rows)
        if (!r.ok()) {
            std::cerr << "sweep: " << rows.size() << " rows, some failed\n";
            return 2;
        }
    return 0;
}

int run_transition(const CommonArgs& args)
{
    const RunConfig cfg = load(args, 1e-6);
    double lo, hi;
    if (cfg.transition_bracket) {
        lo = cfg.transition_bracket->first;
        hi = cfg.transition_bracket->second;
    } else {
        const auto bracket =
            scan_for_bracket(cfg.particle(), cfg.surface(), cfg.z0(),
                             cfg.amplitude(), cfg.mode, cfg.sweep_min,
                             cfg.sweep_max, 32, cfg.quad);
        if (!bracket)
            throw BracketError("transition: no sign change of V_Sum over the "
                               "sweep range; widen sweep.min/sweep.max or give "
                               "transition.bracket");
        lo = bracket->first;
        hi = bracket->second;
    }
    const TransitionResult t =
        find_transition(cfg.particle(), cfg.surface(), cfg.z0(), cfg.amplitude(),
                        cfg.mode, lo, hi, cfg.quad);
    write_output(cfg.output_path, cfg.format == OutputFormat::Csv
                                      ? render_transition_csv(t, cfg)
                                      : render_transition_json(t, cfg));
    return 0;
}

int run_delta_sweep(const CommonArgs& args)
{
    const RunConfig cfg = load(args, 1e-6);
    SweepRequest req;
    req.lambda_min = cfg.sweep_min;
    req.lambda_max = cfg.sweep_max;
    req.points = cfg.sweep_points;
    req.mode = EvalMode::Retarded;
    const auto ret = sweep(cfg.particle(), cfg.surface(), cfg.z0(),
                           cfg.amplitude(), req, cfg.quad);
    req.mode = EvalMode::Vdw;
    const auto vdw = sweep(cfg.particle(), cfg.surface(), cfg.z0(),
                           cfg.amplitude(), req, cfg.quad);

    std::vector<DeltaRow> rows(ret.size());
    bool failed = false;
    for (std::size_t i = 0; i < ret.size(); ++i) {
        rows[i].lambda_over_z0 = ret[i].lambda_over_z0;
        if (!ret[i].ok() || !vdw[i].ok()) {
            rows[i].error = !ret[i].ok() ? ret[i].error : vdw[i].error;
            failed = true;
            continue;
        }
        rows[i].delta_retarded = ret[i].delta;
        rows[i].delta_vdw = vdw[i].delta;
    }
    write_output(cfg.output_path, cfg.format == OutputFormat::Csv
                                      ? render_delta_csv(rows, cfg)
                                      : render_delta_json(rows, cfg));
    return failed ? 2 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lateral Casimir-Polder energy of a spheroidal nanoparticle "
                 "above a corrugated surface"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* eval_cmd =
        app.add_subcommand("eval", "evaluate one corrugation wavelength");
    auto* sweep_cmd =
        app.add_subcommand("sweep", "sweep lambda_c/z0 over a range");
    auto* transition_cmd = app.add_subcommand(
        "transition", "locate the peak/valley transition wavelength");
    auto* delta_cmd = app.add_subcommand(
        "delta-sweep", "compare retarded and vdW phases over a range");
    for (auto* cmd : {eval_cmd, sweep_cmd, transition_cmd, delta_cmd})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(args);
        if (sweep_cmd->parsed()) return run_sweep(args);
        if (transition_cmd->parsed()) return run_transition(args);
        return run_delta_sweep(args);
    } catch (const casimir::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const casimir::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what()
                  << " (best=" << e.best_estimate
                  << ", err=" << e.error_estimate << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
