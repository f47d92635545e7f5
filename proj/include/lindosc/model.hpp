// model.hpp - oscillator parameters, bath diffusion coefficients and initial states

#pragma once

#include <string>
#include <vector>

namespace lindosc {

namespace si {
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double hbar = 1.054571817e-34;      // J s
} // namespace si

/**
 * Bath temperature, stored canonically as C = coth(eps) with eps = hbar*omega/(2kT).
 * T = 0 maps to C = 1 exactly (eps = +inf); T -> inf maps to C -> inf (eps -> 0).
 */
class TemperatureSpec {
public:
    static TemperatureSpec zero() { return TemperatureSpec(1.0); }
    static TemperatureSpec from_coth(double coth_eps);
    static TemperatureSpec from_epsilon(double eps);
    /// kT measured in energy units of hbar*omega; `k_b` converts T to energy.
    static TemperatureSpec from_temperature(double temperature, double hbar, double omega,
                                            double k_b);

    double coth() const { return coth_; }
    double tanh() const { return 1.0 / coth_; }
    double epsilon() const;
    /// tau = 2kT/(hbar omega) = 1/eps; zero at T = 0.
    double tau() const { return 1.0 / epsilon(); }
    /// Thermal energy kT for the given oscillator quantum.
    double thermal_energy(double hbar, double omega) const;
    bool is_zero() const { return coth_ == 1.0; }

private:
    explicit TemperatureSpec(double coth_eps) : coth_(coth_eps) {}
    double coth_;
};

/**
 * Physical parameters of the damped oscillator. Natural units (m = omega = hbar = k = 1)
 * are the default. `closed_system` marks the explicit zero-damping mode (lambda = mu = 0,
 * no diffusion); without it, thermal coefficients require lambda > mu.
 */
struct OscillatorConfig {
    double m{1.0};
    double omega{1.0};
    double lambda{0.0};
    double mu{0.0};
    double hbar{1.0};
    double k_boltzmann{1.0};
    TemperatureSpec temp{TemperatureSpec::zero()};
    bool closed_system{false};

    /// Omega = sqrt(omega^2 - mu^2), the damped oscillation frequency.
    double big_omega() const;
    /// Throws ValidationError unless m, omega, hbar > 0, lambda >= 0 and omega > mu.
    void check() const;

    static OscillatorConfig closed(double omega = 1.0, double m = 1.0, double hbar = 1.0);
    /// SI-unit configuration at absolute temperature `kelvin`.
    static OscillatorConfig si_units(double mass_kg, double omega, double lambda, double mu,
                                     double kelvin);
};

struct DiffusionCoefficients {
    double d_pp{0.0};
    double d_qq{0.0};
    double d_pq{0.0};

    double determinant() const { return d_pp * d_qq - d_pq * d_pq; }
};

/// Correlated coherent state parameters: squeezing delta > 0, correlation |r| < 1.
struct InitialStateSpec {
    double delta{1.0};
    double r{0.0};
    double q0{0.0};
    double p0{0.0};

    void check() const;
};

/// First and second moments of a Gaussian state at time t.
struct GaussianState {
    double mean_q{0.0};
    double mean_p{0.0};
    double s_qq{0.0};
    double s_pp{0.0};
    double s_pq{0.0};
    double t{0.0};

    /// Schroedinger uncertainty function sigma = s_qq s_pp - s_pq^2.
    double uncertainty() const { return s_qq * s_pp - s_pq * s_pq; }
    bool is_valid() const;
};

/// D_pp, D_qq, D_pq for a bath whose asymptotic state is the Gibbs state.
DiffusionCoefficients thermal_coefficients(const OscillatorConfig& cfg);
/// The same formulas without the lambda > mu admissibility check, for reporting only.
DiffusionCoefficients thermal_formula(const OscillatorConfig& cfg);

struct ValidationCheck {
    std::string name;
    bool passed{false};
    bool fatal{true};
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    /// True when every fatal check passed (advisories are ignored).
    bool ok() const;
    const ValidationCheck* find(const std::string& name) const;
};

ValidationReport validate(const OscillatorConfig& cfg, const DiffusionCoefficients& d);

/// Left side minus right side of (lambda^2 - mu^2) coth^2(eps) >= lambda^2.
double thermal_constraint_margin(const OscillatorConfig& cfg);

GaussianState initial_state(const InitialStateSpec& spec, const OscillatorConfig& cfg);

} // namespace lindosc
