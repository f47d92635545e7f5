// propagate.cpp - closed-form, exact-exponential and RK4 moment propagation

#include "lindosc/propagate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lindosc/csv.hpp"
#include "lindosc/errors.hpp"

namespace lindosc {

std::string_view route_name(Route r) {
    switch (r) {
        case Route::closed_form: return "closed-form";
        case Route::lyapunov: return "lyapunov";
        case Route::rk4_oracle: return "rk4-oracle";
    }
    return "unknown";
}

Mat2 drift_matrix(const OscillatorConfig& cfg) {
    return {-(cfg.lambda - cfg.mu), 1.0 / cfg.m, -cfg.m * cfg.omega * cfg.omega,
            -(cfg.lambda + cfg.mu)};
}

Mat2 diffusion_matrix(const DiffusionCoefficients& d) {
    return Mat2::symmetric(d.d_qq, d.d_pp, d.d_pq);
}

Mat2 covariance_matrix(const GaussianState& s) {
    return Mat2::symmetric(s.s_qq, s.s_pp, s.s_pq);
}

Vec2 mean_closed_form(const GaussianState& state0, const OscillatorConfig& cfg, double t) {
    const double big_omega = cfg.big_omega();
    const double decay = std::exp(-cfg.lambda * t);
    const double cs = std::cos(big_omega * t);
    const double sn = std::sin(big_omega * t);
    const double q0 = state0.mean_q;
    const double p0 = state0.mean_p;
    Vec2 out;
    out.q = decay * ((cs + cfg.mu / big_omega * sn) * q0 + sn / (cfg.m * big_omega) * p0);
    out.p = decay * (-cfg.m * cfg.omega * cfg.omega / big_omega * sn * q0 +
                     (cs - cfg.mu / big_omega * sn) * p0);
    return out;
}

std::optional<Mat2> steady_state_covariance(const OscillatorConfig& cfg,
                                            const DiffusionCoefficients& d) {
    if (cfg.lambda == 0.0) return std::nullopt;
    return solve_lyapunov(drift_matrix(cfg), 2.0 * diffusion_matrix(d));
}

namespace {

// Integral of exp(Y s) 2D exp(Y s)^T over [0, t], composite 5-point Gauss-Legendre.
Mat2 forced_response(const Mat2& y, const Mat2& two_d, double t) {
    static constexpr std::array<double, 5> nodes = {
        -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> weights = {
        0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
        0.2369268850561891};
    const double rate = std::sqrt(std::abs(y.det())) + std::abs(y.trace()) + 1.0;
    const auto panels = static_cast<std::size_t>(std::max(16.0, std::ceil(8.0 * rate * t)));
    const double h = t / static_cast<double>(panels);
    Mat2 acc{};
    for (std::size_t k = 0; k < panels; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * h;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Mat2 e = expm(y, mid + 0.5 * h * nodes[i]);
            acc = acc + (0.5 * h * weights[i]) * (e * two_d * e.transpose());
        }
    }
    return acc;
}

GaussianState from_moments(const Vec2& mean, const Mat2& cov, double t) {
    GaussianState s;
    s.mean_q = mean.q;
    s.mean_p = mean.p;
    s.s_qq = cov.a;
    s.s_pp = cov.d;
    s.s_pq = 0.5 * (cov.b + cov.c);
    s.t = t;
    return s;
}

} // namespace

GaussianState covariance_lyapunov(const GaussianState& state0, const OscillatorConfig& cfg,
                                  const DiffusionCoefficients& d, double t) {
    if (t < 0.0) throw ValidationError("propagation time must be >= 0");
    const Mat2 y = drift_matrix(cfg);
    const Mat2 e = expm(y, t);
    const Mat2 sigma0 = covariance_matrix(state0);
    const Vec2 mean = e * Vec2{state0.mean_q, state0.mean_p};

    Mat2 cov;
    if (const auto steady = steady_state_covariance(cfg, d)) {
        cov = e * (sigma0 - *steady) * e.transpose() + *steady;
    } else {
        cov = e * sigma0 * e.transpose();
        const Mat2 two_d = 2.0 * diffusion_matrix(d);
        if (two_d.frobenius() > 0.0 && t > 0.0) cov = cov + forced_response(y, two_d, t);
    }
    return from_moments(mean, cov, state0.t + t);
}

namespace {

struct ClosedFormTerms {
    double coth;
    double sum;    // delta + 1/(delta (1 - r^2))
    double diff;   // delta - 1/(delta (1 - r^2))
    double corr;   // r / sqrt(1 - r^2)
};

ClosedFormTerms closed_form_terms(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    spec.check();
    const double inv = 1.0 / (spec.delta * (1.0 - spec.r * spec.r));
    return {cfg.temp.coth(), spec.delta + inv, spec.delta - inv,
            spec.r / std::sqrt(1.0 - spec.r * spec.r)};
}

} // namespace

double sigma_det_closed(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t) {
    const auto k = closed_form_terms(spec, cfg);
    const double lam = cfg.lambda, mu = cfg.mu, w = cfg.omega;
    const double big_omega = cfg.big_omega();
    const double om2 = big_omega * big_omega;
    const double c = k.coth;
    const double cos2 = std::cos(2.0 * big_omega * t);
    const double sin2 = std::sin(2.0 * big_omega * t);

    const double transient = std::exp(-4.0 * lam * t) * (1.0 - k.sum * c + c * c);
    const double oscillating =
        std::exp(-2.0 * lam * t) * c *
        ((k.sum - 2.0 * c) * (w * w - mu * mu * cos2) / om2 + k.diff * mu * sin2 / big_omega +
         2.0 * k.corr * mu * w * (1.0 - cos2) / om2);
    return 0.25 * cfg.hbar * cfg.hbar * (transient + oscillating + c * c);
}

double sigma_pq_closed(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t) {
    const auto k = closed_form_terms(spec, cfg);
    const double mu = cfg.mu, w = cfg.omega;
    const double big_omega = cfg.big_omega();
    const double c = k.coth;
    const double cos2 = std::cos(2.0 * big_omega * t);
    const double sin2 = std::sin(2.0 * big_omega * t);

    const double bracket = (mu * w * (2.0 * c - k.sum) - 2.0 * w * w * k.corr) * cos2 +
                           w * big_omega * k.diff * sin2 + mu * w * (k.sum - 2.0 * c) +
                           2.0 * mu * mu * k.corr;
    // Overall sign chosen so that t = 0 reproduces the initial covariance hbar r/(2 sqrt(1-r^2)).
    return -cfg.hbar / (4.0 * big_omega * big_omega) * std::exp(-2.0 * cfg.lambda * t) * bracket;
}

GaussianState asymptotic_covariance(const OscillatorConfig& cfg) {
    cfg.check();
    if (!(cfg.lambda > 0.0) || cfg.closed_system)
        throw ValidationError("no asymptotic state without dissipation (lambda = 0)");
    const double c = cfg.temp.coth();
    GaussianState s;
    s.s_qq = cfg.hbar / (2.0 * cfg.m * cfg.omega) * c;
    s.s_pp = cfg.hbar * cfg.m * cfg.omega / 2.0 * c;
    s.s_pq = 0.0;
    s.t = std::numeric_limits<double>::infinity();
    return s;
}

GaussianState closed_form_state(const InitialStateSpec& spec, const OscillatorConfig& cfg,
                                double t) {
    const GaussianState s0 = initial_state(spec, cfg);
    const Vec2 mean = mean_closed_form(s0, cfg, t);

    const double c = cfg.temp.coth();
    const double inf_qq = cfg.hbar / (2.0 * cfg.m * cfg.omega) * c;
    const double inf_pp = cfg.hbar * cfg.m * cfg.omega / 2.0 * c;
    const double x = s0.s_qq - inf_qq;
    const double y = s0.s_pp - inf_pp;
    const double z = s0.s_pq;

    const double m = cfg.m, w = cfg.omega;
    const double big_omega = cfg.big_omega();
    const double k = cfg.mu / big_omega;
    const double cos2 = std::cos(2.0 * big_omega * t);
    const double sin2 = std::sin(2.0 * big_omega * t);
    const double up = 0.5 * (1.0 + cos2);
    const double down = 0.5 * (1.0 - cos2);

    const double m11_sq = up + k * sin2 + k * k * down;
    const double m11_m12 = (0.5 * sin2 + k * down) / (m * big_omega);
    const double m12_sq = down / (m * m * big_omega * big_omega);
    const double m21_sq = m * m * w * w * w * w * down / (big_omega * big_omega);
    const double m21_m22 = -(m * w * w / big_omega) * (0.5 * sin2 - k * down);
    const double m22_sq = up - k * sin2 + k * k * down;

    const double decay = std::exp(-2.0 * cfg.lambda * t);
    GaussianState s;
    s.mean_q = mean.q;
    s.mean_p = mean.p;
    s.s_qq = inf_qq + decay * (m11_sq * x + 2.0 * m11_m12 * z + m12_sq * y);
    s.s_pp = inf_pp + decay * (m21_sq * x + 2.0 * m21_m22 * z + m22_sq * y);
    s.s_pq = sigma_pq_closed(spec, cfg, t);
    s.t = t;
    return s;
}

void Trajectory::append(const GaussianState& s, double sigma_det) {
    if (!samples_.empty() && !(s.t > samples_.back().state.t))
        throw std::invalid_argument("trajectory times must be strictly increasing");
    samples_.push_back({s, sigma_det});
}

std::vector<double> uniform_times(double t_end, double dt) {
    if (!(t_end >= 0.0)) throw ValidationError("t_end must be >= 0");
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    std::vector<double> times{0.0};
    if (t_end == 0.0) return times;
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    for (std::size_t k = 1; k < n; ++k) times.push_back(static_cast<double>(k) * dt);
    times.push_back(t_end);
    return times;
}

namespace {

using Moments = std::array<double, 5>;  // mean_q, mean_p, s_qq, s_pp, s_pq

Moments moment_rhs(const Moments& y, const Mat2& drift, const DiffusionCoefficients& d) {
    const double a = drift.a, b = drift.b, c = drift.c, e = drift.d;
    const double mq = y[0], mp = y[1], sqq = y[2], spp = y[3], spq = y[4];
    return {a * mq + b * mp,
            c * mq + e * mp,
            2.0 * (a * sqq + b * spq) + 2.0 * d.d_qq,
            2.0 * (c * spq + e * spp) + 2.0 * d.d_pp,
            c * sqq + (a + e) * spq + b * spp + 2.0 * d.d_pq};
}

Moments axpy(const Moments& y, double h, const Moments& k) {
    Moments out;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

} // namespace

Trajectory integrate_moments_rk4(const GaussianState& state0, const OscillatorConfig& cfg,
                                 const DiffusionCoefficients& d, double t_end, double dt,
                                 std::size_t sample_every) {
    if (sample_every == 0) throw ValidationError("sample_every must be >= 1");
    const auto times = uniform_times(t_end, dt);
    const Mat2 drift = drift_matrix(cfg);

    Trajectory traj(Route::rk4_oracle);
    Moments y = {state0.mean_q, state0.mean_p, state0.s_qq, state0.s_pp, state0.s_pq};
    auto record = [&](double t) {
        GaussianState s{y[0], y[1], y[2], y[3], y[4], state0.t + t};
        traj.append(s);
    };
    record(0.0);

    for (std::size_t step = 1; step < times.size(); ++step) {
        const double h = times[step] - times[step - 1];
        const Moments k1 = moment_rhs(y, drift, d);
        const Moments k2 = moment_rhs(axpy(y, 0.5 * h, k1), drift, d);
        const Moments k3 = moment_rhs(axpy(y, 0.5 * h, k2), drift, d);
        const Moments k4 = moment_rhs(axpy(y, h, k3), drift, d);
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        for (double v : y)
            if (!std::isfinite(v))
                throw NumericError("rk4: non-finite moment at step " + std::to_string(step) +
                                   " (t=" + format_number(times[step]) + ")");
        if (step % sample_every == 0 || step + 1 == times.size()) record(times[step]);
    }
    return traj;
}

Trajectory sample_closed_form(const InitialStateSpec& spec, const OscillatorConfig& cfg,
                              const std::vector<double>& times) {
    Trajectory traj(Route::closed_form);
    for (double t : times) traj.append(closed_form_state(spec, cfg, t), sigma_det_closed(spec, cfg, t));
    return traj;
}

Trajectory sample_lyapunov(const GaussianState& state0, const OscillatorConfig& cfg,
                           const DiffusionCoefficients& d, const std::vector<double>& times) {
    Trajectory traj(Route::lyapunov);
    for (double t : times) traj.append(covariance_lyapunov(state0, cfg, d, t));
    return traj;
}

double route_deviation(const TrajectorySample& a, const TrajectorySample& b) {
    const auto& x = a.state;
    const auto& y = b.state;
    double dev = 0.0;

    const double mean_scale =
        std::max(std::hypot(x.mean_q, x.mean_p), std::hypot(y.mean_q, y.mean_p));
    if (mean_scale > 0.0)
        dev = std::max(dev, std::hypot(x.mean_q - y.mean_q, x.mean_p - y.mean_p) / mean_scale);

    const double cov_scale =
        std::max(covariance_matrix(x).frobenius(), covariance_matrix(y).frobenius());
    if (cov_scale > 0.0) {
        dev = std::max(dev, std::abs(x.s_qq - y.s_qq) / cov_scale);
        dev = std::max(dev, std::abs(x.s_pp - y.s_pp) / cov_scale);
        dev = std::max(dev, std::abs(x.s_pq - y.s_pq) / cov_scale);
    }
    const double sig_scale = std::max(std::abs(a.sigma_det), std::abs(b.sigma_det));
    if (sig_scale > 0.0) dev = std::max(dev, std::abs(a.sigma_det - b.sigma_det) / sig_scale);
    return dev;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out(kTrajectoryHeader);
    out += '\n';
    for (const auto& smp : traj.samples()) {
        const auto& s = smp.state;
        out += csv_row(std::vector<double>{s.t, s.mean_q, s.mean_p, s.s_qq, s.s_pp, s.s_pq,
                                           smp.sigma_det});
    }
    return out;
}

} // namespace lindosc
