// lindosc_cli.cpp - command-line front end
//
// Exit codes: 0 ok, 1 validation failure, 2 numeric failure, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindosc/acceptance.hpp"
#include "lindosc/classicality.hpp"
#include "lindosc/config_io.hpp"
#include "lindosc/csv.hpp"
#include "lindosc/decoherence.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/figdata.hpp"
#include "lindosc/fpe.hpp"
#include "lindosc/propagate.hpp"
#include "lindosc/states.hpp"
#include "lindosc/sweep.hpp"

using namespace lindosc;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;

// Parameters shared by every command; flags override values from --config.
struct CommonOptions {
    std::string config;
    std::optional<double> m, omega, hbar, lambda, mu, delta, r, coth, temperature, q0, p0;
    bool closed{false};
    bool si{false};
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "key = value configuration file");
    cmd->add_option("--m", o.m, "mass");
    cmd->add_option("--omega", o.omega, "oscillator frequency");
    cmd->add_option("--hbar", o.hbar, "Planck constant (ignored with --si)");
    cmd->add_option("--lambda", o.lambda, "dissipation constant");
    cmd->add_option("--mu", o.mu, "second bath constant (mu < lambda)");
    cmd->add_option("--delta-sq", o.delta, "squeezing parameter delta");
    cmd->add_option("--corr-r", o.r, "initial correlation coefficient r");
    cmd->add_option("--coth", o.coth, "C = coth(hbar omega / 2kT)");
    cmd->add_option("--temperature", o.temperature, "bath temperature (instead of --coth)");
    cmd->add_option("--q0", o.q0, "initial mean coordinate");
    cmd->add_option("--p0", o.p0, "initial mean momentum");
    cmd->add_flag("--closed", o.closed, "zero-damping mode (lambda = mu = 0, no diffusion)");
    cmd->add_flag("--si", o.si, "SI units: hbar and k take their SI values, T in kelvin");
}

RunConfig resolve(const CommonOptions& o) {
    ConfigValues v;
    if (!o.config.empty()) v = load_config_file(o.config);
    auto set = [&](const char* key, const std::optional<double>& x) {
        if (x) v[key] = *x;
    };
    set("m", o.m);
    set("omega", o.omega);
    set("hbar", o.hbar);
    set("lambda", o.lambda);
    set("mu", o.mu);
    set("init.delta", o.delta);
    set("init.r", o.r);
    set("init.q0", o.q0);
    set("init.p0", o.p0);
    if (o.coth) {
        v.erase("temp.T");
        v["temp.C"] = *o.coth;
    }
    if (o.temperature) {
        v.erase("temp.C");
        v["temp.T"] = *o.temperature;
    }
    if (o.closed) v["closed"] = 1.0;
    if (o.si) v["hbar"] = si::hbar;

    RunConfig rc = build_run_config(v);
    if (o.si) {
        rc.osc.k_boltzmann = si::k_boltzmann;
        if (v.count("temp.T"))
            rc.osc.temp = TemperatureSpec::from_temperature(v.at("temp.T"), rc.osc.hbar,
                                                            rc.osc.omega, rc.osc.k_boltzmann);
    }
    return rc;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_text_file(out, text);
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::string report_text(const DiffusionCoefficients& d, const ValidationReport& rep) {
    std::string out = "d_pp = " + format_number(d.d_pp) + "\n" + "d_qq = " +
                      format_number(d.d_qq) + "\n" + "d_pq = " + format_number(d.d_pq) + "\n" +
                      "determinant = " + format_number(d.determinant()) + "\n";
    for (const auto& c : rep.checks)
        out += "check " + c.name + " = " + (c.passed ? "pass" : (c.fatal ? "FAIL" : "warn")) +
               "  # " + c.detail + "\n";
    out += std::string("valid = ") + (rep.ok() ? "yes" : "no") + "\n";
    return out;
}

int cmd_validate(const CommonOptions& o, bool coefficients_only) {
    const RunConfig rc = resolve(o);
    const auto d = thermal_formula(rc.osc);
    const auto rep = validate(rc.osc, d);
    std::string text = report_text(d, rep);
    // coeffs keeps the coefficient block and the verdict, validate prints every check.
    if (coefficients_only)
        text = text.substr(0, text.find("check ")) + text.substr(text.find("valid = "));
    std::cout << text;
    if (!rep.ok()) {
        for (const auto& c : rep.checks)
            if (c.fatal && !c.passed) std::cerr << "invalid: " << c.name << " (" << c.detail << ")\n";
        return kExitValidation;
    }
    return 0;
}

DiffusionCoefficients checked_coefficients(const OscillatorConfig& cfg) {
    const auto d = thermal_coefficients(cfg);
    const auto rep = validate(cfg, d);
    if (!rep.ok())
        for (const auto& c : rep.checks)
            if (c.fatal && !c.passed) throw ValidationError(c.name + ": " + c.detail);
    return d;
}

struct TrajectoryOptions {
    double t_end{14.0};
    double dt{0.1};
    double rk4_step{1e-4};
    std::string route{"closed"};
    std::string out;
};

Trajectory run_route(const std::string& route, const RunConfig& rc,
                     const DiffusionCoefficients& d, const std::vector<double>& times,
                     double t_end, double dt, double rk4_step) {
    const auto s0 = initial_state(rc.init, rc.osc);
    if (route == "closed") return sample_closed_form(rc.init, rc.osc, times);
    if (route == "lyapunov") return sample_lyapunov(s0, rc.osc, d, times);
    if (route == "rk4") {
        if (!(rk4_step > 0.0)) throw ValidationError("--rk4-step must be > 0");
        const auto sub = static_cast<std::size_t>(std::max(1.0, std::ceil(dt / rk4_step - 1e-9)));
        return integrate_moments_rk4(s0, rc.osc, d, t_end, dt / static_cast<double>(sub), sub);
    }
    throw ValidationError("unknown route '" + route + "' (closed | lyapunov | rk4 | all)");
}

std::vector<double> times_of(const Trajectory& t) {
    std::vector<double> out;
    for (const auto& s : t.samples()) out.push_back(s.state.t);
    return out;
}

int cmd_trajectory(const CommonOptions& o, const TrajectoryOptions& t) {
    const RunConfig rc = resolve(o);
    const auto d = checked_coefficients(rc.osc);
    if (t.route != "all") {
        const auto traj = run_route(t.route, rc, d, uniform_times(t.t_end, t.dt), t.t_end, t.dt,
                                    t.rk4_step);
        emit(trajectory_csv(traj), t.out);
        return 0;
    }
    const auto rk4 = run_route("rk4", rc, d, {}, t.t_end, t.dt, t.rk4_step);
    const auto times = times_of(rk4);
    const auto closed = run_route("closed", rc, d, times, t.t_end, t.dt, t.rk4_step);
    const auto lyap = run_route("lyapunov", rc, d, times, t.t_end, t.dt, t.rk4_step);

    std::vector<std::string> header{"t"};
    for (const char* prefix : {"closed_", "lyap_", "rk4_"})
        for (const char* col : {"mean_q", "mean_p", "s_qq", "s_pp", "s_pq", "sigma_det"})
            header.push_back(std::string(prefix) + col);
    header.push_back("max_deviation");
    std::string out = csv_row(header);
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> row{times[k]};
        for (const Trajectory* tr : {&closed, &lyap, &rk4}) {
            const auto& s = (*tr)[k];
            row.insert(row.end(), {s.state.mean_q, s.state.mean_p, s.state.s_qq, s.state.s_pp,
                                   s.state.s_pq, s.sigma_det});
        }
        row.push_back(std::max({route_deviation(closed[k], lyap[k]),
                                route_deviation(closed[k], rk4[k]),
                                route_deviation(lyap[k], rk4[k])}));
        out += csv_row(row);
    }
    emit(out, t.out);
    return 0;
}

int cmd_metrics(const CommonOptions& o, const TrajectoryOptions& t) {
    const RunConfig rc = resolve(o);
    const auto d = checked_coefficients(rc.osc);
    const auto traj =
        run_route(t.route, rc, d, uniform_times(t.t_end, t.dt), t.t_end, t.dt, t.rk4_step);
    emit(metrics_csv(classicality_metrics(traj, rc.osc.hbar)), t.out);
    return 0;
}

int cmd_window(const CommonOptions& o, const TrajectoryOptions& t, double qd, double cc) {
    const RunConfig rc = resolve(o);
    checked_coefficients(rc.osc);
    const auto traj = sample_closed_form(rc.init, rc.osc, uniform_times(t.t_end, t.dt));
    const auto refine = [&](double time) {
        return TrajectorySample{closed_form_state(rc.init, rc.osc, time),
                                sigma_det_closed(rc.init, rc.osc, time)};
    };
    const auto windows = classicality_window(traj, qd, cc, rc.osc.hbar, refine);
    std::string out = "qd_threshold = " + format_number(qd) + "\n" + "cc_threshold = " +
                      format_number(cc) + "\n" + "t_end = " + format_number(t.t_end) + "\n";
    if (windows.empty()) out += "window = empty\n";
    for (std::size_t k = 0; k < windows.size(); ++k)
        out += "window." + std::to_string(k + 1) + " = " + format_number(windows[k].begin) + " " +
               format_number(windows[k].end) + "\n";
    emit(out, t.out);
    return 0;
}

int cmd_deco(const CommonOptions& o, bool json, std::optional<double> separation,
             const std::string& out_path) {
    const RunConfig rc = resolve(o);
    checked_coefficients(rc.osc);
    const auto rep = deco_report(rc.init, rc.osc);
    std::optional<RateRatio> ratio;
    if (separation) ratio = rate_ratio(rc.osc, *separation);

    if (json) {
        auto j = nlohmann::ordered_json::parse(deco_report_json(rep));
        if (ratio) {
            j["separation"] = *separation;
            j["rate_ratio.exact"] = ratio->exact;
            j["rate_ratio.high_T"] = ratio->high_T;
        }
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }
    std::string text = deco_report_text(rep);
    if (ratio)
        text += "separation = " + format_number(*separation) + "\n" +
                "rate_ratio.exact = " + format_number(ratio->exact) + "\n" +
                "rate_ratio.high_T = " + format_number(ratio->high_T) + "\n";
    emit(text, out_path);
    return 0;
}

int cmd_figdata(std::vector<std::string> figures, const std::string& out_dir) {
    if (figures.empty() || (figures.size() == 1 && figures[0] == "all")) figures = figure_ids();
    ensure_directory(out_dir);
    for (const auto& id : figures)
        for (const auto& f : figure_data(id)) {
            const auto path = (std::filesystem::path(out_dir) / f.name).string();
            write_text_file(path, f.content);
            std::cout << path << "\n";
        }
    return 0;
}

int cmd_sweep(const CommonOptions& o, const std::vector<std::string>& axes,
              const std::string& quantities, std::size_t workers, const std::string& out) {
    SweepSpec sw;
    if (!o.config.empty()) sw.base = load_config_file(o.config);
    // Validate the fixed parameters once so flag errors surface before the sweep.
    const RunConfig rc = resolve(o);
    sw.base["m"] = rc.osc.m;
    sw.base["omega"] = rc.osc.omega;
    sw.base["hbar"] = rc.osc.hbar;
    sw.base["lambda"] = rc.osc.lambda;
    sw.base["mu"] = rc.osc.mu;
    sw.base.erase("temp.T");
    sw.base["temp.C"] = rc.osc.temp.coth();
    sw.base["init.delta"] = rc.init.delta;
    sw.base["init.r"] = rc.init.r;
    sw.base["init.q0"] = rc.init.q0;
    sw.base["init.p0"] = rc.init.p0;
    if (rc.osc.closed_system) sw.base["closed"] = 1.0;
    for (const auto& a : axes) sw.axes.push_back(parse_sweep_axis(a));
    if (!quantities.empty()) {
        sw.quantities.clear();
        std::size_t start = 0;
        while (true) {
            const auto comma = quantities.find(',', start);
            sw.quantities.push_back(quantities.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    sw.workers = workers;
    emit(run_sweep(sw), out);
    return 0;
}

struct FpeOptions {
    std::size_t n{128};
    double t_end{0.5};
    std::optional<double> dt;
    std::string snapshots;
    std::string scheme{"central"};
    bool stationary{false};
    std::string out_dir;
};

int cmd_fpe(const CommonOptions& o, const FpeOptions& f) {
    const RunConfig rc = resolve(o);
    const auto& cfg = rc.osc;
    const auto d = checked_coefficients(cfg);
    if (cfg.closed_system) throw ValidationError("the Fokker-Planck run needs a thermal bath");

    const auto s0 = initial_state(rc.init, cfg);
    GridGeometry geom;
    PhaseSpaceGrid w0{GridGeometry{}};
    if (f.stationary) {
        geom = covering_geometry({asymptotic_covariance(cfg)}, 6.0, f.n, f.n);
        w0 = PhaseSpaceGrid(geom);
        for (std::size_t i = 0; i < geom.n_q; ++i)
            for (std::size_t j = 0; j < geom.n_p; ++j)
                w0.at(i, j) = wigner_stationary(cfg, geom.q(i), geom.p(j));
    } else {
        geom = fpe_domain(s0, cfg, d, f.n, f.n);
        w0 = render_grid(s0, geom);
    }

    FpeRunSpec run;
    run.t_end = f.t_end;
    run.dt = f.dt ? *f.dt : stable_time_step(geom, cfg, d, run.safety);
    if (f.scheme == "upwind")
        run.scheme = AdvectionScheme::upwind;
    else if (f.scheme != "central")
        throw ValidationError("unknown scheme '" + f.scheme + "' (central | upwind)");
    if (!f.snapshots.empty()) {
        std::size_t start = 0;
        while (true) {
            const auto comma = f.snapshots.find(',', start);
            run.snapshot_times.push_back(parse_decimal(f.snapshots.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    const auto res = evolve_wigner(w0, cfg, d, run);
    const auto reference =
        f.stationary ? w0 : render_grid(covariance_lyapunov(s0, cfg, d, run.t_end), geom);

    std::vector<std::string> files;
    if (!f.out_dir.empty()) {
        ensure_directory(f.out_dir);
        for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
            const auto name = "snapshot_" + std::to_string(k) + ".csv";
            write_text_file((std::filesystem::path(f.out_dir) / name).string(),
                            grid_csv(res.snapshots[k].grid));
            files.push_back(name);
        }
        write_text_file((std::filesystem::path(f.out_dir) / "final.csv").string(),
                        grid_csv(res.grid));
        files.push_back("final.csv");
    }

    auto manifest =
        nlohmann::ordered_json::parse(fpe_manifest_json(cfg, d, geom, run, res.telemetry, files));
    manifest["initial"] = f.stationary ? "stationary" : "initial-state";
    std::vector<double> snap_times;
    for (const auto& s : res.snapshots) snap_times.push_back(s.t);
    manifest["snapshot_times_used"] = snap_times;
    manifest["reference"] = f.stationary ? "initial grid" : "analytic Gaussian at t_end";
    manifest["l2_error"] = l2_distance(res.grid, reference);
    manifest["linf_error"] = linf_distance(res.grid, reference);
    const auto mom = grid_moments(res.grid);
    manifest["moments"] = {{"mass", mom.mass},         {"mean_q", mom.state.mean_q},
                           {"mean_p", mom.state.mean_p}, {"s_qq", mom.state.s_qq},
                           {"s_pp", mom.state.s_pp},     {"s_pq", mom.state.s_pq}};
    const std::string text = manifest.dump(2) + "\n";
    if (f.out_dir.empty())
        std::cout << text;
    else
        write_text_file((std::filesystem::path(f.out_dir) / "manifest.json").string(), text);
    return 0;
}

int cmd_selftest() {
    int failed = 0;
    run_acceptance([&](const CriterionResult& r) {
        std::cout << format_result(r) << std::endl;
        failed += !r.passed;
    });
    std::cout << (failed == 0 ? "selftest: all criteria pass" : "selftest: FAILED") << "\n";
    return failed == 0 ? 0 : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Damped harmonic oscillator in a thermal bath: Gaussian-state dynamics, "
                 "decoherence and classical correlations"};
    app.require_subcommand(1);

    CommonOptions common;
    TrajectoryOptions traj;
    FpeOptions fpe;
    bool json = false;
    std::optional<double> separation;
    double qd_threshold = 0.99, cc_threshold = 10.0;
    std::vector<std::string> figures;
    std::vector<std::string> axes;
    std::string quantities;
    std::size_t workers = 0;

    auto* coeffs = app.add_subcommand("coeffs", "diffusion coefficients of the thermal bath");
    auto* validate_cmd = app.add_subcommand("validate", "check the physical constraints");
    auto* trajectory = app.add_subcommand("trajectory", "moment trajectory as CSV");
    auto* metrics = app.add_subcommand("metrics", "decoherence/correlation degrees as CSV");
    auto* window = app.add_subcommand("window", "time interval where both degrees are small");
    auto* deco = app.add_subcommand("deco", "decoherence and relaxation time scales");
    auto* figdata = app.add_subcommand("figdata", "regenerate figure data");
    auto* sweep = app.add_subcommand("sweep", "tensor-product parameter sweep as CSV");
    auto* fpe_cmd = app.add_subcommand("fpe", "finite-difference Fokker-Planck run");
    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

    for (auto* cmd : {coeffs, validate_cmd, trajectory, metrics, window, deco, sweep, fpe_cmd})
        add_common(cmd, common);

    TrajectoryOptions metrics_opts, window_opts;
    metrics_opts.t_end = 20.0;
    window_opts.t_end = 20.0;
    window_opts.dt = 0.01;
    for (auto [cmd, opts] : {std::pair{trajectory, &traj}, std::pair{metrics, &metrics_opts},
                             std::pair{window, &window_opts}}) {
        cmd->add_option("--t-end", opts->t_end, "final time")->capture_default_str();
        cmd->add_option("--dt", opts->dt, "output spacing")->capture_default_str();
        cmd->add_option("--out", opts->out, "output file (default stdout)");
        if (cmd == window) continue;
        cmd->add_option("--route", opts->route, "closed | lyapunov | rk4 (| all for trajectory)")
            ->capture_default_str();
        cmd->add_option("--rk4-step", opts->rk4_step, "largest RK4 step")->capture_default_str();
    }
    window->add_option("--qd-threshold", qd_threshold, "delta_qd must be below")
        ->capture_default_str();
    window->add_option("--cc-threshold", cc_threshold, "delta_cc must be below")
        ->capture_default_str();

    std::string deco_out;
    deco->add_flag("--json", json, "JSON instead of key = value text");
    deco->add_option("--separation", separation, "q - q' for the decoherence/relaxation ratio");
    deco->add_option("--out", deco_out, "output file (default stdout)");

    std::string fig_out;
    figdata->add_option("--figure", figures, "1 2a 2b 3a 3b 3c 4a 4b or all (default all)");
    figdata->add_option("--out", fig_out, "output directory")->required();

    std::string sweep_out;
    sweep->add_option("--axis", axes, "name:min:max:count[:log], name in lambda mu delta r C t")
        ->required();
    sweep->add_option("--quantities", quantities, "comma-separated (default delta_qd,delta_cc)");
    sweep->add_option("--workers", workers, "worker threads (0 = all cores)");
    sweep->add_option("--out", sweep_out, "output file (default stdout)");

    fpe_cmd->add_option("--n", fpe.n, "grid points per axis")->capture_default_str();
    fpe_cmd->add_option("--t-end", fpe.t_end, "final time")->capture_default_str();
    fpe_cmd->add_option("--dt", fpe.dt, "time step (default: stability bound)");
    fpe_cmd->add_option("--snapshots", fpe.snapshots, "comma-separated snapshot times");
    fpe_cmd->add_option("--scheme", fpe.scheme, "central | upwind")->capture_default_str();
    fpe_cmd->add_flag("--stationary", fpe.stationary, "start from the thermal steady state");
    fpe_cmd->add_option("--out", fpe.out_dir, "directory for snapshots and manifest.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*coeffs) return cmd_validate(common, true);
        if (*validate_cmd) return cmd_validate(common, false);
        if (*trajectory) return cmd_trajectory(common, traj);
        if (*metrics) return cmd_metrics(common, metrics_opts);
        if (*window) return cmd_window(common, window_opts, qd_threshold, cc_threshold);
        if (*deco) return cmd_deco(common, json, separation, deco_out);
        if (*figdata) return cmd_figdata(figures, fig_out);
        if (*sweep) return cmd_sweep(common, axes, quantities, workers, sweep_out);
        if (*fpe_cmd) return cmd_fpe(common, fpe);
        if (*selftest) return cmd_selftest();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
