// model.cpp - oscillator parameters, bath coefficients, initial correlated coherent states

#include "lindosc/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

// Relative slack for inequality checks that are tight by construction (T = 0 boundary).
constexpr double kBoundarySlack = 1e-12;

bool at_least(double lhs, double rhs) {
    return lhs >= rhs - kBoundarySlack * std::abs(rhs);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

TemperatureSpec TemperatureSpec::from_coth(double coth_eps) {
    if (!(coth_eps >= 1.0) || !std::isfinite(coth_eps))
        throw ValidationError("coth(eps) must be finite and >= 1, got " + fmt(coth_eps));
    return TemperatureSpec(coth_eps);
}

TemperatureSpec TemperatureSpec::from_epsilon(double eps) {
    if (!(eps > 0.0)) throw ValidationError("eps = hbar*omega/2kT must be > 0");
    if (std::isinf(eps)) return zero();
    return TemperatureSpec(1.0 / std::tanh(eps));
}

TemperatureSpec TemperatureSpec::from_temperature(double temperature, double hbar, double omega,
                                                  double k_b) {
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ValidationError("temperature must be finite and >= 0");
    if (temperature == 0.0) return zero();
    return from_epsilon(hbar * omega / (2.0 * k_b * temperature));
}

double TemperatureSpec::epsilon() const {
    if (coth_ == 1.0) return std::numeric_limits<double>::infinity();
    return std::atanh(1.0 / coth_);
}

double TemperatureSpec::thermal_energy(double hbar, double omega) const {
    if (coth_ == 1.0) return 0.0;
    return hbar * omega / (2.0 * epsilon());
}

double OscillatorConfig::big_omega() const {
    return std::sqrt(omega * omega - mu * mu);
}

void OscillatorConfig::check() const {
    if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("mass must be > 0");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("omega must be > 0");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ValidationError("hbar must be > 0");
    if (!(k_boltzmann > 0.0)) throw ValidationError("Boltzmann constant must be > 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be >= 0");
    if (!std::isfinite(mu)) throw ValidationError("mu must be finite");
    if (!(omega > mu))
        throw ValidationError("overdamped or critical regime (omega <= mu) is not supported");
    if (closed_system && (lambda != 0.0 || mu != 0.0))
        throw ValidationError("closed-system mode requires lambda = mu = 0");
}

OscillatorConfig OscillatorConfig::closed(double omega, double m, double hbar) {
    OscillatorConfig cfg;
    cfg.omega = omega;
    cfg.m = m;
    cfg.hbar = hbar;
    cfg.closed_system = true;
    return cfg;
}

OscillatorConfig OscillatorConfig::si_units(double mass_kg, double omega, double lambda, double mu,
                                            double kelvin) {
    OscillatorConfig cfg;
    cfg.m = mass_kg;
    cfg.omega = omega;
    cfg.lambda = lambda;
    cfg.mu = mu;
    cfg.hbar = si::hbar;
    cfg.k_boltzmann = si::k_boltzmann;
    cfg.temp = TemperatureSpec::from_temperature(kelvin, si::hbar, omega, si::k_boltzmann);
    return cfg;
}

void InitialStateSpec::check() const {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ValidationError("squeezing parameter delta must be > 0");
    if (!(std::abs(r) < 1.0)) throw ValidationError("correlation coefficient must satisfy |r| < 1");
    if (!std::isfinite(q0) || !std::isfinite(p0))
        throw ValidationError("initial centroid must be finite");
}

bool GaussianState::is_valid() const {
    return std::isfinite(mean_q) && std::isfinite(mean_p) && s_qq > 0.0 && s_pp > 0.0 &&
           std::isfinite(s_pq) && uncertainty() > 0.0;
}

DiffusionCoefficients thermal_coefficients(const OscillatorConfig& cfg) {
    cfg.check();
    if (cfg.closed_system) return {};
    if (!(cfg.lambda > cfg.mu))
        throw ValidationError("thermal coefficients need lambda > mu (D_qq would be <= 0): lambda=" +
                              fmt(cfg.lambda) + ", mu=" + fmt(cfg.mu));
    return thermal_formula(cfg);
}

DiffusionCoefficients thermal_formula(const OscillatorConfig& cfg) {
    if (cfg.closed_system) return {};
    const double c = cfg.temp.coth();
    DiffusionCoefficients d;
    d.d_pp = 0.5 * (cfg.lambda + cfg.mu) * cfg.hbar * cfg.m * cfg.omega * c;
    d.d_qq = 0.5 * (cfg.lambda - cfg.mu) * cfg.hbar / (cfg.m * cfg.omega) * c;
    d.d_pq = 0.0;
    return d;
}

double thermal_constraint_margin(const OscillatorConfig& cfg) {
    const double c = cfg.temp.coth();
    return (cfg.lambda * cfg.lambda - cfg.mu * cfg.mu) * c * c - cfg.lambda * cfg.lambda;
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (c.fatal && !c.passed) return false;
    return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate(const OscillatorConfig& cfg, const DiffusionCoefficients& d) {
    ValidationReport rep;
    auto add = [&](std::string name, bool passed, bool fatal, std::string detail) {
        rep.checks.push_back({std::move(name), passed, fatal, std::move(detail)});
    };

    add("underdamped", cfg.omega > cfg.mu, true,
        "omega=" + fmt(cfg.omega) + " > mu=" + fmt(cfg.mu));

    if (cfg.closed_system) {
        const bool zero = d.d_pp == 0.0 && d.d_qq == 0.0 && d.d_pq == 0.0 && cfg.lambda == 0.0 &&
                          cfg.mu == 0.0;
        add("closed_system", zero, true, "lambda = mu = 0 and all diffusion coefficients zero");
    } else {
        add("d_pp_positive", d.d_pp > 0.0, true, "D_pp=" + fmt(d.d_pp));
        add("d_qq_positive", d.d_qq > 0.0, true, "D_qq=" + fmt(d.d_qq));
        add("lambda_exceeds_mu", cfg.lambda > cfg.mu, true,
            "lambda=" + fmt(cfg.lambda) + ", mu=" + fmt(cfg.mu));
    }

    const double lhs = d.determinant();
    const double rhs = 0.25 * cfg.lambda * cfg.lambda * cfg.hbar * cfg.hbar;
    add("diffusion_determinant", at_least(lhs, rhs), true,
        "D_pp*D_qq - D_pq^2 = " + fmt(lhs) + " >= lambda^2 hbar^2/4 = " + fmt(rhs));

    const double c = cfg.temp.coth();
    const double t_lhs = (cfg.lambda * cfg.lambda - cfg.mu * cfg.mu) * c * c;
    const double t_rhs = cfg.lambda * cfg.lambda;
    add("thermal_constraint", at_least(t_lhs, t_rhs), true,
        "(lambda^2 - mu^2) coth^2 = " + fmt(t_lhs) + " >= lambda^2 = " + fmt(t_rhs));

    add("weak_coupling", cfg.lambda < 0.1 * cfg.omega, false,
        "advisory: lambda=" + fmt(cfg.lambda) + " < 0.1*omega=" + fmt(0.1 * cfg.omega));
    return rep;
}

GaussianState initial_state(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    spec.check();
    cfg.check();
    const double one_minus_r2 = 1.0 - spec.r * spec.r;
    GaussianState s;
    s.mean_q = spec.q0;
    s.mean_p = spec.p0;
    s.s_qq = cfg.hbar * spec.delta / (2.0 * cfg.m * cfg.omega);
    s.s_pp = cfg.hbar * cfg.m * cfg.omega / (2.0 * spec.delta * one_minus_r2);
    s.s_pq = cfg.hbar * spec.r / (2.0 * std::sqrt(one_minus_r2));
    s.t = 0.0;
    return s;
}

} // namespace lindosc
