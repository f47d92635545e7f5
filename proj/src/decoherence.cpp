// decoherence.cpp - time scales, short-time expansions and regime classification

#include "lindosc/decoherence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lindosc/csv.hpp"
#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// r^2 / (delta (1 - r^2)) and 1 / (delta (1 - r^2)), the two squeezing/correlation mixes.
double r_mix(const InitialStateSpec& s) {
    return s.r * s.r / (s.delta * (1.0 - s.r * s.r));
}
double inv_mix(const InitialStateSpec& s) {
    return 1.0 / (s.delta * (1.0 - s.r * s.r));
}

double reciprocal_of_twice(double rate) {
    return rate > 0.0 ? 1.0 / (2.0 * rate) : kInf;
}

} // namespace

std::string_view variant_name(TimeVariant v) {
    switch (v) {
        case TimeVariant::order_estimate: return "order-estimate";
        case TimeVariant::general: return "general";
        case TimeVariant::r0: return "r0";
        case TimeVariant::high_T: return "high_T";
        case TimeVariant::high_T_r0: return "high_T_r0";
    }
    return "general";
}

bool TimeScale::infinite() const {
    return std::isinf(value);
}

TimeScale decoherence_time_order(const OscillatorConfig& cfg, double s_qq0) {
    if (!(s_qq0 > 0.0)) throw ValidationError("initial coordinate variance must be > 0");
    const double denom = (cfg.lambda + cfg.mu) * cfg.m * cfg.omega * s_qq0 * cfg.temp.coth();
    return {denom > 0.0 ? 2.0 * cfg.hbar / denom : kInf, TimeVariant::order_estimate};
}

double decoherence_rate(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    spec.check();
    const double c = cfg.temp.coth();
    const double rm = r_mix(spec);
    return cfg.lambda * (spec.delta + rm) * c + cfg.mu * (spec.delta - rm) * c - cfg.lambda -
           cfg.mu - cfg.omega * spec.r / (spec.delta * std::sqrt(1.0 - spec.r * spec.r));
}

double gamma_short_time(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t) {
    // Printed with a leading minus; gamma = sigma/(2 hbar^2 s_qq) is positive.
    const double gamma0 = cfg.m * cfg.omega / (4.0 * cfg.hbar * spec.delta);
    return gamma0 * (1.0 + 2.0 * decoherence_rate(spec, cfg) * t);
}

TimeScale decoherence_time(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    spec.check();
    if (spec.r == 0.0) {
        const double rate = (cfg.lambda + cfg.mu) * (spec.delta * cfg.temp.coth() - 1.0);
        return {reciprocal_of_twice(rate), TimeVariant::r0};
    }
    return {reciprocal_of_twice(decoherence_rate(spec, cfg)), TimeVariant::general};
}

TimeScale decoherence_time_high_T(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    spec.check();
    const double tau = cfg.temp.tau();
    if (spec.r == 0.0)
        return {reciprocal_of_twice((cfg.lambda + cfg.mu) * spec.delta * tau),
                TimeVariant::high_T_r0};
    const double rm = r_mix(spec);
    const double rate = (cfg.lambda * (spec.delta + rm) + cfg.mu * (spec.delta - rm)) * tau;
    return {reciprocal_of_twice(rate), TimeVariant::high_T};
}

TimeScale statistical_time(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    spec.check();
    const double im = inv_mix(spec);
    const double rate =
        (cfg.lambda * (spec.delta + im) + cfg.mu * (spec.delta - im)) * cfg.temp.tau();
    return {reciprocal_of_twice(rate), TimeVariant::high_T};
}

double relaxation_time(const OscillatorConfig& cfg) {
    return cfg.lambda > 0.0 ? 1.0 / cfg.lambda : kInf;
}

double sigma_short_time(const InitialStateSpec& spec, const OscillatorConfig& cfg, double t) {
    spec.check();
    const double c = cfg.temp.coth();
    const double im = inv_mix(spec);
    const double slope = cfg.lambda * (spec.delta + im) * c + cfg.mu * (spec.delta - im) * c -
                         2.0 * cfg.lambda;
    return 0.25 * cfg.hbar * cfg.hbar * (1.0 + 2.0 * slope * t);
}

double pure_decoherence_rate(const DiffusionCoefficients& d, double hbar, double q, double qp) {
    const double dq = q - qp;
    return d.d_pp * dq * dq / (hbar * hbar);
}

double pure_decoherence_factor(const DiffusionCoefficients& d, double hbar, double q, double qp,
                               double t) {
    return std::exp(-pure_decoherence_rate(d, hbar, q, qp) * t);
}

RateRatio rate_ratio(const OscillatorConfig& cfg, double separation) {
    if (cfg.mu != 0.0) throw ValidationError("rate ratio is defined for mu = 0");
    const double dq2 = separation * separation;
    RateRatio r;
    r.exact = cfg.m * cfg.omega / (2.0 * cfg.hbar) * dq2 * cfg.temp.coth();
    const double kt = cfg.temp.thermal_energy(cfg.hbar, cfg.omega);
    r.high_T = cfg.m * kt * dq2 / (cfg.hbar * cfg.hbar);
    return r;
}

RegimeReport regime_report(const OscillatorConfig& cfg) {
    RegimeReport r;
    const double c = cfg.temp.coth();
    r.sigma_heisenberg = 0.25 * cfg.hbar * cfg.hbar;
    r.sigma_be = r.sigma_heisenberg * c * c;
    const double kt = cfg.temp.thermal_energy(cfg.hbar, cfg.omega);
    r.sigma_mb = (kt / cfg.omega) * (kt / cfg.omega);
    const double ratio = r.sigma_mb > 0.0 ? r.sigma_be / r.sigma_mb : kInf;
    // 1% agreement bands; only the limits themselves are fixed by the physics.
    if (c < 1.01)
        r.label = "quantum";
    else if (ratio >= 0.99 && ratio <= 1.01)
        r.label = "classical-statistical";
    else
        r.label = "quantum-statistical";
    return r;
}

TimeScales time_scales(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    TimeScales ts;
    ts.t_deco = decoherence_time(spec, cfg);
    ts.t_deco_order = decoherence_time_order(cfg, initial_state(spec, cfg).s_qq);
    ts.t_deco_high_T = decoherence_time_high_T(spec, cfg);
    ts.t_d = statistical_time(spec, cfg);
    ts.t_rel = relaxation_time(cfg);
    return ts;
}

DecoReport deco_report(const InitialStateSpec& spec, const OscillatorConfig& cfg) {
    DecoReport r;
    r.cfg = cfg;
    r.spec = spec;
    r.times = time_scales(spec, cfg);
    r.rate = decoherence_rate(spec, cfg);
    r.regime = regime_report(cfg);
    return r;
}

namespace {

struct Entry {
    std::string key;
    double number;
    std::string text;  // used when non-empty
};

std::vector<Entry> report_entries(const DecoReport& r) {
    const auto& t = r.times;
    std::vector<Entry> e{
        {"m", r.cfg.m, ""},
        {"omega", r.cfg.omega, ""},
        {"lambda", r.cfg.lambda, ""},
        {"mu", r.cfg.mu, ""},
        {"hbar", r.cfg.hbar, ""},
        {"coth_eps", r.cfg.temp.coth(), ""},
        {"delta", r.spec.delta, ""},
        {"r", r.spec.r, ""},
        {"t_deco", t.t_deco.value, ""},
        {"t_deco.variant", 0.0, std::string(variant_name(t.t_deco.variant))},
        {"t_deco.decoheres", 0.0, t.t_deco.infinite() ? "no" : "yes"},
        {"t_deco_order", t.t_deco_order.value, ""},
        {"t_deco_high_T", t.t_deco_high_T.value, ""},
        {"t_deco_high_T.variant", 0.0, std::string(variant_name(t.t_deco_high_T.variant))},
        {"t_d", t.t_d.value, ""},
        {"t_rel", t.t_rel, ""},
        {"decoherence_rate", 2.0 * r.rate, ""},
        {"sigma_be", r.regime.sigma_be, ""},
        {"sigma_heisenberg", r.regime.sigma_heisenberg, ""},
        {"sigma_mb", r.regime.sigma_mb, ""},
        {"regime", 0.0, r.regime.label},
    };
    return e;
}

} // namespace

std::string deco_report_text(const DecoReport& r) {
    std::string out;
    for (const auto& e : report_entries(r))
        out += e.key + " = " + (e.text.empty() ? format_number(e.number) : e.text) + "\n";
    return out;
}

std::string deco_report_json(const DecoReport& r) {
    nlohmann::ordered_json j;
    for (const auto& e : report_entries(r)) {
        if (!e.text.empty())
            j[e.key] = e.text;
        else if (!std::isfinite(e.number))
            j[e.key] = format_number(e.number);
        else
            j[e.key] = e.number;
    }
    return j.dump(2) + "\n";
}

} // namespace lindosc
