// propagate.hpp - time evolution of Gaussian moments
//
// Three independent routes are provided:
//   closed-form  analytic trigonometric/exponential expressions for the thermal bath,
//   lyapunov     Sigma(t) = E (Sigma0 - Sigma_inf) E^T + Sigma_inf with E = exp(Y t),
//   rk4-oracle   fixed-step RK4 on dm/dt = Y m, dSigma/dt = Y Sigma + Sigma Y^T + 2D.
// Drift matrix Y = [[-(lambda - mu), 1/m], [-m omega^2, -(lambda + mu)]].

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lindosc/linalg2.hpp"
#include "lindosc/model.hpp"

namespace lindosc {

enum class Route { closed_form, lyapunov, rk4_oracle };

std::string_view route_name(Route r);

Mat2 drift_matrix(const OscillatorConfig& cfg);
/// [[D_qq, D_pq], [D_pq, D_pp]], ordered like the (q, p) covariance.
Mat2 diffusion_matrix(const DiffusionCoefficients& d);
Mat2 covariance_matrix(const GaussianState& s);

/// Centroid after time t from the damped-oscillation solution (underdamped case).
Vec2 mean_closed_form(const GaussianState& state0, const OscillatorConfig& cfg, double t);

/// Steady state of Y S + S Y^T + 2D = 0; nullopt when lambda = 0 (no steady state).
std::optional<Mat2> steady_state_covariance(const OscillatorConfig& cfg,
                                            const DiffusionCoefficients& d);

/// Exact propagation through the matrix exponential. Falls back to Gauss-Legendre
/// quadrature of the particular solution when no steady state exists.
GaussianState covariance_lyapunov(const GaussianState& state0, const OscillatorConfig& cfg,
                                  const DiffusionCoefficients& d, double t);

/// Closed-form uncertainty function sigma(t) for a correlated coherent initial state in a
/// thermal bath.
double sigma_det_closed(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t);

/// Closed-form coordinate-momentum covariance, in the convention
/// sigma_pq(0) = hbar r / (2 sqrt(1 - r^2)).
double sigma_pq_closed(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t);

/// Full moment set on the closed-form route. The variances use a double-angle expansion
/// relaxing toward the Gibbs covariance; the covariance uses sigma_pq_closed.
GaussianState closed_form_state(const InitialStateSpec& spec, const OscillatorConfig& cfg,
                                double t);

/// Gibbs-state covariance (hbar C/2m omega, hbar m omega C/2, 0) with zero means.
GaussianState asymptotic_covariance(const OscillatorConfig& cfg);

struct TrajectorySample {
    GaussianState state;
    double sigma_det{0.0};
};

/// Ordered samples at strictly increasing times, tagged with the route that produced them.
class Trajectory {
public:
    explicit Trajectory(Route provenance) : provenance_(provenance) {}

    /// Throws std::invalid_argument when times are not strictly increasing.
    void append(const GaussianState& s, double sigma_det);
    void append(const GaussianState& s) { append(s, s.uncertainty()); }

    Route provenance() const { return provenance_; }
    const std::vector<TrajectorySample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const TrajectorySample& operator[](std::size_t i) const { return samples_[i]; }
    const TrajectorySample& back() const { return samples_.back(); }

private:
    Route provenance_;
    std::vector<TrajectorySample> samples_;
};

/// 0, dt, 2dt, ..., ending exactly at t_end (last interval may be shorter).
std::vector<double> uniform_times(double t_end, double dt);

/// Classic fixed-step RK4 on the 5-component moment system. Samples are kept every
/// `sample_every` steps plus the final step. Throws NumericError on non-finite values.
Trajectory integrate_moments_rk4(const GaussianState& state0, const OscillatorConfig& cfg,
                                 const DiffusionCoefficients& d, double t_end, double dt,
                                 std::size_t sample_every = 1);

Trajectory sample_closed_form(const InitialStateSpec& spec, const OscillatorConfig& cfg,
                              const std::vector<double>& times);
Trajectory sample_lyapunov(const GaussianState& state0, const OscillatorConfig& cfg,
                           const DiffusionCoefficients& d, const std::vector<double>& times);

/// Largest relative discrepancy between two moment sets: means against the centroid norm,
/// covariance entries against the Frobenius norm, sigma against itself.
double route_deviation(const TrajectorySample& a, const TrajectorySample& b);

inline constexpr std::string_view kTrajectoryHeader = "t,mean_q,mean_p,s_qq,s_pp,s_pq,sigma_det";

std::string trajectory_csv(const Trajectory& traj);

} // namespace lindosc
