// classicality.cpp - decoherence and correlation measures, contours, classicality windows

#include "lindosc/classicality.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lindosc/csv.hpp"
#include "lindosc/errors.hpp"

namespace lindosc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double delta_qd(const GaussianState& s, double hbar) {
    return hbar / (2.0 * std::sqrt(s.uncertainty()));
}

double delta_qd(const AlphaBetaGamma& abg) {
    return 0.5 * std::sqrt(abg.alpha / abg.gamma);
}

double delta_qd_asymptotic(const OscillatorConfig& cfg) {
    return cfg.temp.tanh();
}

double delta_cc(const GaussianState& s) {
    if (s.s_pq == 0.0) return kInf;
    return std::sqrt(s.uncertainty()) / std::abs(s.s_pq);
}

double delta_cc(const AlphaBetaGamma& abg) {
    if (abg.beta == 0.0) return kInf;
    return 2.0 * std::sqrt(abg.alpha * abg.gamma) / std::abs(abg.beta);
}

double delta_cc_closed_system(double delta, const OscillatorConfig& cfg, double t) {
    if (cfg.lambda != 0.0) throw ValidationError("closed-system delta_cc needs lambda = 0");
    if (!(delta > 0.0)) throw ValidationError("delta must be > 0");
    const double sn = std::sin(2.0 * cfg.omega * t);
    // sin(2 omega t) at a multiple of pi/2 is only zero up to rounding of the argument.
    const double tiny = 8.0 * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::abs(2.0 * cfg.omega * t));
    const double amp = std::abs((delta - 1.0 / delta) * sn);
    if (std::abs(sn) <= tiny || amp == 0.0) return kInf;
    return 2.0 / amp;
}

ClassicalityMetrics classicality_metrics(const TrajectorySample& sample, double hbar) {
    const auto& s = sample.state;
    ClassicalityMetrics m;
    m.t = s.t;
    m.sigma_det = sample.sigma_det;
    m.sigma_pq = s.s_pq;
    m.delta_qd = hbar / (2.0 * std::sqrt(sample.sigma_det));
    m.delta_cc = s.s_pq == 0.0 ? kInf : std::sqrt(sample.sigma_det) / std::abs(s.s_pq);
    m.gamma = sample.sigma_det / (2.0 * hbar * hbar * s.s_qq);
    return m;
}

std::vector<ClassicalityMetrics> classicality_metrics(const Trajectory& traj, double hbar) {
    std::vector<ClassicalityMetrics> rows;
    rows.reserve(traj.size());
    for (const auto& smp : traj.samples()) rows.push_back(classicality_metrics(smp, hbar));
    return rows;
}

SigmaContour one_sigma_contour(const GaussianState& s, std::size_t n_points) {
    if (n_points < 8) throw ValidationError("contour needs at least 8 points");
    const auto eig = eigen_symmetric(covariance_matrix(s));
    SigmaContour c;
    c.semi_major = std::sqrt(2.0 * eig.major);
    c.semi_minor = std::sqrt(2.0 * eig.minor);
    c.angle = eig.angle;
    c.area = std::numbers::pi * c.semi_major * c.semi_minor;
    const double ca = std::cos(eig.angle), sa = std::sin(eig.angle);
    c.points.reserve(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                          static_cast<double>(n_points);
        const double u = c.semi_major * std::cos(th);
        const double v = c.semi_minor * std::sin(th);
        c.points.push_back({s.mean_q + ca * u - sa * v, s.mean_p + sa * u + ca * v});
    }
    return c;
}

CorrelationAxes correlation_axes(const GaussianState& s, double hbar) {
    const auto abg = alpha_beta_gamma(s, hbar);
    return {2.0 * hbar * std::sqrt(abg.gamma), hbar * std::abs(abg.beta) / std::sqrt(abg.alpha)};
}

double polygon_area(const std::vector<Vec2>& points) {
    double acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& a = points[i];
        const auto& b = points[(i + 1) % points.size()];
        acc += a.q * b.p - b.q * a.p;
    }
    return 0.5 * std::abs(acc);
}

std::vector<TimeInterval> classicality_window(const Trajectory& traj, double qd_threshold,
                                              double cc_threshold, double hbar,
                                              const StateAt& refine) {
    if (traj.size() < 2) throw ValidationError("classicality window needs >= 2 samples");
    if (!(qd_threshold > 0.0) || !(cc_threshold > 0.0))
        throw ValidationError("thresholds must be positive");

    auto inside = [&](const TrajectorySample& smp) {
        const auto m = classicality_metrics(smp, hbar);
        return m.delta_qd < qd_threshold && m.delta_cc < cc_threshold;
    };
    // Returns the crossing time between t_lo (state `lo_in`) and t_hi.
    auto crossing = [&](double t_lo, double t_hi, bool lo_in) {
        if (!refine) return lo_in ? t_lo : t_hi;
        while (t_hi - t_lo > 1e-6) {
            const double mid = 0.5 * (t_lo + t_hi);
            if (inside(refine(mid)) == lo_in)
                t_lo = mid;
            else
                t_hi = mid;
        }
        return 0.5 * (t_lo + t_hi);
    };

    std::vector<TimeInterval> out;
    bool prev_in = inside(traj[0]);
    double begin = traj[0].state.t;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const bool now_in = inside(traj[k]);
        if (now_in != prev_in) {
            const double t = crossing(traj[k - 1].state.t, traj[k].state.t, prev_in);
            if (now_in)
                begin = t;
            else
                out.push_back({begin, t});
        }
        prev_in = now_in;
    }
    if (prev_in) out.push_back({begin, traj.back().state.t});
    return out;
}

std::string metrics_csv(const std::vector<ClassicalityMetrics>& rows) {
    std::string out = std::string(kMetricsHeader) + "\n";
    for (const auto& m : rows)
        out += csv_row(std::vector<double>{m.t, m.delta_qd, m.delta_cc, m.gamma, m.sigma_det,
                                           m.sigma_pq});
    return out;
}

} // namespace lindosc
