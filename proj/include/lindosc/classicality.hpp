// classicality.hpp - degree of quantum decoherence, degree of classical correlations,
// 1-sigma contours and detection of the interval where both hold

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lindosc/linalg2.hpp"
#include "lindosc/model.hpp"
#include "lindosc/propagate.hpp"
#include "lindosc/states.hpp"

namespace lindosc {

struct ClassicalityMetrics {
    double t{0.0};
    double delta_qd{1.0};
    double delta_cc{0.0};  // +inf when s_pq = 0
    double gamma{0.0};
    double sigma_det{0.0};
    double sigma_pq{0.0};
};

/// hbar / (2 sqrt(sigma)); 1 for minimum-uncertainty states, < 1 once decoherence sets in.
double delta_qd(const GaussianState& s, double hbar = 1.0);
/// Same quantity as (1/2) sqrt(alpha/gamma).
double delta_qd(const AlphaBetaGamma& abg);
/// Asymptotic value tanh(eps) = 1/C, independent of the initial state.
double delta_qd_asymptotic(const OscillatorConfig& cfg);

/// sqrt(sigma) / |s_pq|; +inf when s_pq = 0.
double delta_cc(const GaussianState& s);
/// Same quantity as 2 sqrt(alpha gamma) / |beta|.
double delta_cc(const AlphaBetaGamma& abg);
/// Zero-damping result 2 / |(delta - 1/delta) sin(2 omega t)| for r = 0.
double delta_cc_closed_system(double delta, const OscillatorConfig& cfg, double t);

ClassicalityMetrics classicality_metrics(const TrajectorySample& sample, double hbar = 1.0);
std::vector<ClassicalityMetrics> classicality_metrics(const Trajectory& traj, double hbar = 1.0);

/// Points of the ellipse (x - m)^T Sigma^{-1} (x - m) = 2 around the centroid.
struct SigmaContour {
    std::vector<Vec2> points;
    double semi_major{0.0};
    double semi_minor{0.0};
    double angle{0.0};  // of the major axis, radians from the q axis
    double area{0.0};
};

SigmaContour one_sigma_contour(const GaussianState& s, std::size_t n_points);

/// Semi-axes of the 1-sigma ellipse in the coordinates (hbar beta q - p, hbar beta q):
/// width = 2 hbar sqrt(gamma), length = hbar |beta| / sqrt(alpha), and
/// width / length = delta_cc. The width is the short axis once delta_cc < 1.
struct CorrelationAxes {
    double width{0.0};
    double length{0.0};
};
CorrelationAxes correlation_axes(const GaussianState& s, double hbar = 1.0);

/// Shoelace area of a closed polygon.
double polygon_area(const std::vector<Vec2>& points);

struct TimeInterval {
    double begin{0.0};
    double end{0.0};
};

using StateAt = std::function<TrajectorySample(double)>;

/// Maximal intervals where delta_qd < qd_threshold and delta_cc < cc_threshold.
/// Crossings are located on the trajectory samples and, when `refine` is given, bisected on
/// it down to 1e-6 in time. Throws ValidationError for fewer than two samples.
std::vector<TimeInterval> classicality_window(const Trajectory& traj, double qd_threshold,
                                              double cc_threshold, double hbar = 1.0,
                                              const StateAt& refine = {});

inline constexpr const char* kMetricsHeader = "t,delta_qd,delta_cc,gamma,sigma_det,sigma_pq";
std::string metrics_csv(const std::vector<ClassicalityMetrics>& rows);

} // namespace lindosc
