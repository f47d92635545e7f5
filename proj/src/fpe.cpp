// fpe.cpp - finite-difference Fokker-Planck integration on a phase-space lattice

#include "lindosc/fpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "lindosc/csv.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/propagate.hpp"

namespace lindosc {

namespace {

constexpr double kTinyDiffusion = 1e-300;

double velocity_q(const OscillatorConfig& cfg, double q, double p) {
    return p / cfg.m - (cfg.lambda - cfg.mu) * q;
}

double velocity_p(const OscillatorConfig& cfg, double q, double p) {
    return -cfg.m * cfg.omega * cfg.omega * q - (cfg.lambda + cfg.mu) * p;
}

void check_same_geometry(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    const auto& x = a.geometry();
    const auto& y = b.geometry();
    if (x.n_q != y.n_q || x.n_p != y.n_p || x.q_min != y.q_min || x.q_max != y.q_max ||
        x.p_min != y.p_min || x.p_max != y.p_max)
        throw ValidationError("grids have different geometry");
}

} // namespace

double stable_time_step(const GridGeometry& geom, const OscillatorConfig& cfg,
                        const DiffusionCoefficients& d, double safety) {
    geom.check();
    const double dq = geom.dq(), dp = geom.dp();
    double vq_max = 0.0, vp_max = 0.0;
    // Velocities are linear, so the extremes sit at the corners.
    for (double q : {geom.q_min, geom.q_max})
        for (double p : {geom.p_min, geom.p_max}) {
            vq_max = std::max(vq_max, std::abs(velocity_q(cfg, q, p)));
            vp_max = std::max(vp_max, std::abs(velocity_p(cfg, q, p)));
        }
    double limit = std::min(dq * dq / (2.0 * d.d_qq + kTinyDiffusion),
                            dp * dp / (2.0 * d.d_pp + kTinyDiffusion));
    if (vq_max > 0.0) limit = std::min(limit, dq / vq_max);
    if (vp_max > 0.0) limit = std::min(limit, dp / vp_max);
    return safety * limit;
}

GridGeometry fpe_domain(const GaussianState& initial, const OscillatorConfig& cfg,
                        const DiffusionCoefficients& d, std::size_t n_q, std::size_t n_p,
                        double n_sigma) {
    std::vector<GaussianState> states{initial};
    if (const auto inf = steady_state_covariance(cfg, d)) {
        GaussianState s;
        s.s_qq = inf->a;
        s.s_pp = inf->d;
        s.s_pq = inf->b;
        states.push_back(s);
    }
    return covering_geometry(states, n_sigma, n_q, n_p);
}

FpeResult evolve_wigner(const PhaseSpaceGrid& w0, const OscillatorConfig& cfg,
                        const DiffusionCoefficients& d, const FpeRunSpec& run) {
    const GridGeometry& g = w0.geometry();
    if (!(run.t_end >= 0.0) || !std::isfinite(run.t_end))
        throw ValidationError("t_end must be finite and >= 0");
    if (!(run.dt > 0.0)) throw ValidationError("dt must be > 0");
    for (double ts : run.snapshot_times)
        if (!(ts >= 0.0 && ts <= run.t_end))
            throw ValidationError("snapshot time outside [0, t_end]");

    const double mass0 = w0.integral();
    if (std::abs(mass0 - 1.0) > 1e-3)
        throw ValidationError("initial grid is not normalised (mass " + format_number(mass0) +
                              ")");
    const double limit = stable_time_step(g, cfg, d, run.safety);
    if (run.dt > limit)
        throw ValidationError("dt = " + format_number(run.dt) + " exceeds the stability bound " +
                              format_number(limit));

    const std::size_t nq = g.n_q, np = g.n_p;
    const double dq = g.dq(), dp = g.dp();
    const std::size_t steps =
        run.t_end == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(run.t_end / run.dt - 1e-9));
    const double dt = steps == 0 ? 0.0 : run.t_end / static_cast<double>(steps);

    // Face velocities: vq_face[i*np + j] at (q_{i-1/2}, p_j) for i = 0..nq,
    // vp_face[i*(np+1) + j] at (q_i, p_{j-1/2}) for j = 0..np.
    std::vector<double> vq_face((nq + 1) * np), vp_face(nq * (np + 1));
    for (std::size_t i = 0; i <= nq; ++i)
        for (std::size_t j = 0; j < np; ++j)
            vq_face[i * np + j] =
                velocity_q(cfg, g.q_min + (static_cast<double>(i) - 0.5) * dq, g.p(j));
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j <= np; ++j)
            vp_face[i * (np + 1) + j] =
                velocity_p(cfg, g.q(i), g.p_min + (static_cast<double>(j) - 0.5) * dp);

    const bool upwind = run.scheme == AdvectionScheme::upwind;
    auto face_value = [upwind](double v, double left, double right) {
        if (upwind) return v > 0.0 ? left : right;
        return 0.5 * (left + right);
    };

    std::vector<double> cur = w0.values();
    std::vector<double> next(cur.size());
    auto at = [np](const std::vector<double>& w, std::size_t i, std::size_t j) {
        return w[i * np + j];
    };
    auto value = [&](const std::vector<double>& w, long i, long j) {
        if (i < 0 || j < 0 || i >= static_cast<long>(nq) || j >= static_cast<long>(np))
            return 0.0;
        return w[static_cast<std::size_t>(i) * np + static_cast<std::size_t>(j)];
    };

    FpeResult result{w0, {}, {}};
    auto& tel = result.telemetry;
    tel.steps = steps;
    tel.dt_used = dt;
    tel.dt_limit = limit;
    tel.initial_mass = mass0;
    tel.min_value = w0.min_value();

    std::vector<double> pending = run.snapshot_times;
    std::sort(pending.begin(), pending.end());
    std::size_t next_snap = 0;
    auto take_snapshots = [&](std::size_t step) {
        const double t = static_cast<double>(step) * dt;
        while (next_snap < pending.size() &&
               (step == steps || pending[next_snap] <= t + 0.5 * dt)) {
            result.snapshots.push_back({t, PhaseSpaceGrid(g, cur)});
            ++next_snap;
        }
    };
    take_snapshots(0);

    const double cross = 2.0 * d.d_pq / (4.0 * dq * dp);
    const double cell = dq * dp;
    for (std::size_t step = 1; step <= steps; ++step) {
        double out_mass = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < nq; ++i) {
            const long il = static_cast<long>(i);
            for (std::size_t j = 0; j < np; ++j) {
                const long jl = static_cast<long>(j);
                const double w = at(cur, i, j);

                // q-direction fluxes through the left (i-1/2) and right (i+1/2) faces.
                const double vl = vq_face[i * np + j];
                const double vr = vq_face[(i + 1) * np + j];
                double fl, fr;
                if (i == 0) {
                    fl = std::min(vl, 0.0) * w;
                    out_mass -= fl * dp;
                } else {
                    fl = vl * face_value(vl, at(cur, i - 1, j), w);
                }
                if (i + 1 == nq) {
                    fr = std::max(vr, 0.0) * w;
                    out_mass += fr * dp;
                } else {
                    fr = vr * face_value(vr, w, at(cur, i + 1, j));
                }

                // p-direction fluxes through the lower and upper faces.
                const double vd = vp_face[i * (np + 1) + j];
                const double vu = vp_face[i * (np + 1) + j + 1];
                double fd, fu;
                if (j == 0) {
                    fd = std::min(vd, 0.0) * w;
                    out_mass -= fd * dq;
                } else {
                    fd = vd * face_value(vd, at(cur, i, j - 1), w);
                }
                if (j + 1 == np) {
                    fu = std::max(vu, 0.0) * w;
                    out_mass += fu * dq;
                } else {
                    fu = vu * face_value(vu, w, at(cur, i, j + 1));
                }

                const double lap_q =
                    (value(cur, il + 1, jl) - 2.0 * w + value(cur, il - 1, jl)) / (dq * dq);
                const double lap_p =
                    (value(cur, il, jl + 1) - 2.0 * w + value(cur, il, jl - 1)) / (dp * dp);
                double mixed = 0.0;
                if (d.d_pq != 0.0)
                    mixed = cross * (value(cur, il + 1, jl + 1) - value(cur, il + 1, jl - 1) -
                                     value(cur, il - 1, jl + 1) + value(cur, il - 1, jl - 1));

                const double rhs = -(fr - fl) / dq - (fu - fd) / dp + d.d_qq * lap_q +
                                   d.d_pp * lap_p + mixed;
                const double wn = w + dt * rhs;
                finite = finite && std::isfinite(wn);
                next[i * np + j] = wn;
            }
        }
        if (!finite)
            throw NumericError("Fokker-Planck integration produced a non-finite value at step " +
                               std::to_string(step));
        cur.swap(next);
        tel.outflow += out_mass * dt;
        double mass = 0.0;
        double lo = cur[0];
        for (double v : cur) {
            mass += v;
            lo = std::min(lo, v);
        }
        mass *= cell;
        tel.min_value = std::min(tel.min_value, lo);
        tel.max_mass_drift = std::max(tel.max_mass_drift, std::abs(mass - mass0));
        take_snapshots(step);
    }
    result.grid = PhaseSpaceGrid(g, std::move(cur));
    tel.final_mass = result.grid.integral();
    return result;
}

GridMoments grid_moments(const PhaseSpaceGrid& w) {
    const auto& g = w.geometry();
    double m0 = 0.0, mq = 0.0, mp = 0.0;
    for (std::size_t i = 0; i < g.n_q; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.at(i, j);
            m0 += v;
            mq += v * g.q(i);
            mp += v * g.p(j);
        }
    if (!(m0 > 0.0)) throw NumericError("grid has no positive mass");
    mq /= m0;
    mp /= m0;
    double sqq = 0.0, spp = 0.0, spq = 0.0;
    for (std::size_t i = 0; i < g.n_q; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.at(i, j);
            const double x = g.q(i) - mq, y = g.p(j) - mp;
            sqq += v * x * x;
            spp += v * y * y;
            spq += v * x * y;
        }
    GridMoments out;
    out.mass = m0 * g.cell_area();
    out.state.mean_q = mq;
    out.state.mean_p = mp;
    out.state.s_qq = sqq / m0;
    out.state.s_pp = spp / m0;
    out.state.s_pq = spq / m0;
    return out;
}

double l2_distance(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    check_same_geometry(a, b);
    double acc = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        const double e = a.values()[k] - b.values()[k];
        acc += e * e;
    }
    return std::sqrt(acc * a.geometry().cell_area());
}

double linf_distance(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    check_same_geometry(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
    return worst;
}

std::string fpe_manifest_json(const OscillatorConfig& cfg, const DiffusionCoefficients& d,
                              const GridGeometry& geom, const FpeRunSpec& run,
                              const FpeTelemetry& tel, const std::vector<std::string>& files) {
    nlohmann::ordered_json j;
    j["oscillator"] = {{"m", cfg.m},           {"omega", cfg.omega}, {"lambda", cfg.lambda},
                       {"mu", cfg.mu},         {"hbar", cfg.hbar},   {"coth_eps", cfg.temp.coth()}};
    j["diffusion"] = {{"d_pp", d.d_pp}, {"d_qq", d.d_qq}, {"d_pq", d.d_pq}};
    j["grid"] = {{"q_min", geom.q_min}, {"q_max", geom.q_max}, {"p_min", geom.p_min},
                 {"p_max", geom.p_max}, {"n_q", geom.n_q},     {"n_p", geom.n_p}};
    j["run"] = {{"dt_requested", run.dt},
                {"t_end", run.t_end},
                {"scheme", run.scheme == AdvectionScheme::upwind ? "upwind" : "central"},
                {"safety", run.safety},
                {"snapshot_times", run.snapshot_times}};
    j["telemetry"] = {{"steps", tel.steps},
                      {"dt_used", tel.dt_used},
                      {"dt_limit", tel.dt_limit},
                      {"initial_mass", tel.initial_mass},
                      {"final_mass", tel.final_mass},
                      {"outflow", tel.outflow},
                      {"max_mass_drift", tel.max_mass_drift},
                      {"min_value", tel.min_value}};
    j["files"] = files;
    return j.dump(2) + "\n";
}

} // namespace lindosc
