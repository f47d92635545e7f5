// decoherence.hpp - decoherence, statistical-fluctuation and relaxation time scales,
// short-time expansions and the asymptotic uncertainty regime

#pragma once

#include <string>
#include <string_view>

#include "lindosc/model.hpp"

namespace lindosc {

enum class TimeVariant { order_estimate, general, r0, high_T, high_T_r0 };

std::string_view variant_name(TimeVariant v);

/// A time scale; value may be +inf when the corresponding process does not happen.
struct TimeScale {
    double value{0.0};
    TimeVariant variant{TimeVariant::general};

    bool infinite() const;
};

/// 2 hbar / ((lambda + mu) m omega s_qq(0) C), with (q - q')^2 taken as the initial spread.
TimeScale decoherence_time_order(const OscillatorConfig& cfg, double s_qq0);

/// Bracket B of the short-time expansion gamma(t) = gamma(0) (1 + 2 B t), where
/// gamma = sigma/(2 hbar^2 s_qq) sets the off-diagonal decay:
/// lambda (delta + r^2/(delta(1-r^2))) C + mu (delta - r^2/(delta(1-r^2))) C - lambda - mu
///   - omega r / (delta sqrt(1-r^2)).
double decoherence_rate(const InitialStateSpec& spec, const OscillatorConfig& cfg);

/// Linear short-time expansion of gamma(t) (valid for lambda t << 1, Omega t << 1).
double gamma_short_time(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t);

/// 1 / (2 * decoherence_rate); +inf when the rate is not positive.
TimeScale decoherence_time(const InitialStateSpec& spec, const OscillatorConfig& cfg);

/// High-temperature forms with C replaced by tau = 2kT/(hbar omega).
TimeScale decoherence_time_high_T(const InitialStateSpec& spec, const OscillatorConfig& cfg);
/// Time at which thermal fluctuations of sigma(t) reach the quantum ones.
TimeScale statistical_time(const InitialStateSpec& spec, const OscillatorConfig& cfg);
/// 1 / lambda.
double relaxation_time(const OscillatorConfig& cfg);

/// Linear short-time expansion of the uncertainty function sigma(t).
double sigma_short_time(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t);

/// Decay rate D_pp (q - q')^2 / hbar^2 of an off-diagonal element when the D_pp term dominates.
double pure_decoherence_rate(const DiffusionCoefficients& d, double hbar, double q, double qp);
/// exp(-rate * t); 1 on the diagonal.
double pure_decoherence_factor(const DiffusionCoefficients& d, double hbar, double q, double qp,
                               double t);

/// Ratio of relaxation time to decoherence time for a superposition separated by `separation`.
/// Order-of-magnitude quantity; requires mu = 0.
struct RateRatio {
    double exact{0.0};   // (m omega / 2 hbar) dq^2 coth(eps)
    double high_T{0.0};  // m k T dq^2 / hbar^2
};
RateRatio rate_ratio(const OscillatorConfig& cfg, double separation);

struct RegimeReport {
    double sigma_be{0.0};
    double sigma_heisenberg{0.0};
    double sigma_mb{0.0};
    std::string label;  // quantum | quantum-statistical | classical-statistical
};
RegimeReport regime_report(const OscillatorConfig& cfg);

struct TimeScales {
    TimeScale t_deco;
    TimeScale t_deco_order;
    TimeScale t_deco_high_T;
    TimeScale t_d;
    double t_rel{0.0};
};
TimeScales time_scales(const InitialStateSpec& spec, const OscillatorConfig& cfg);

struct DecoReport {
    OscillatorConfig cfg;
    InitialStateSpec spec;
    TimeScales times;
    double rate{0.0};
    RegimeReport regime;
};
DecoReport deco_report(const InitialStateSpec& spec, const OscillatorConfig& cfg);

/// `key = value` lines; infinity rendered as `inf`.
std::string deco_report_text(const DecoReport& r);
/// Same content as JSON; infinity rendered as the string "inf".
std::string deco_report_json(const DecoReport& r);

} // namespace lindosc
