// test_decoherence.cpp - time scales and short-time expansions against propagated moments

#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "lindosc/decoherence.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/propagate.hpp"

using namespace lindosc;

namespace {

OscillatorConfig bath(double lambda, double mu, TemperatureSpec temp) {
    OscillatorConfig cfg;
    cfg.lambda = lambda;
    cfg.mu = mu;
    cfg.temp = temp;
    return cfg;
}

OscillatorConfig thermal(double coth) {
    return bath(0.2, 0.1, TemperatureSpec::from_coth(coth));
}

double gamma_of(const GaussianState& s, double hbar = 1.0) {
    return s.uncertainty() / (2.0 * hbar * hbar * s.s_qq);
}

// Second-order one-sided derivative at t = 0.
template <class F>
double derivative_at_zero(F&& f, double h) {
    return (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
}

} // namespace

TEST_CASE("order-of-magnitude decoherence time") {
    const auto cfg = thermal(3.0);
    const double s_qq0 = initial_state({4.0, 0.0, 0.0, 0.0}, cfg).s_qq;
    CHECK(s_qq0 == doctest::Approx(2.0));
    const auto t = decoherence_time_order(cfg, s_qq0);
    CHECK(t.value == doctest::Approx(2.0 / (0.3 * 2.0 * 3.0)).epsilon(1e-14));
    CHECK(t.variant == TimeVariant::order_estimate);
    // Doubling the spread halves the time; an infinite temperature makes it vanish.
    CHECK(decoherence_time_order(cfg, 2.0 * s_qq0).value == doctest::Approx(0.5 * t.value));
    CHECK(decoherence_time_order(thermal(1e12), s_qq0).value < 1e-11);
    CHECK_THROWS_AS(decoherence_time_order(cfg, 0.0), ValidationError);
}

TEST_CASE("gamma(0) of a coherent state") {
    const auto cfg = thermal(3.0);
    CHECK(gamma_short_time({1.0, 0.0, 0.0, 0.0}, cfg, 0.0) == doctest::Approx(0.25));
    CHECK(gamma_of(initial_state({1.0, 0.0, 0.0, 0.0}, cfg)) == doctest::Approx(0.25));
}

TEST_CASE("short-time gamma slope matches propagated moments") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ul(0.15, 0.6), uc(1.5, 10.0), ud(0.5, 8.0),
        ur(-0.7, 0.7);
    for (int k = 0; k < 40; ++k) {
        const double lambda = ul(rng);
        const auto cfg = bath(lambda, 0.3 * lambda, TemperatureSpec::from_coth(uc(rng)));
        const InitialStateSpec spec{ud(rng), ur(rng), 0.0, 0.0};
        const auto d = thermal_coefficients(cfg);
        const auto s0 = initial_state(spec, cfg);
        const auto g = [&](double t) { return gamma_of(covariance_lyapunov(s0, cfg, d, t)); };
        const double slope = derivative_at_zero(g, 1e-4) / g(0.0);
        const double b = decoherence_rate(spec, cfg);
        CHECK(slope == doctest::Approx(2.0 * b).epsilon(1e-3).scale(1.0));
        CHECK(gamma_short_time(spec, cfg, 0.0) == doctest::Approx(g(0.0)).epsilon(1e-13));
    }
}

TEST_CASE("ground state of a zero-temperature bath does not decohere") {
    const auto cfg = bath(0.2, 0.0, TemperatureSpec::zero());
    const InitialStateSpec spec{1.0, 0.0, 0.0, 0.0};
    CHECK(decoherence_rate(spec, cfg) == doctest::Approx(0.0).scale(1.0));
    CHECK(decoherence_time(spec, cfg).infinite());
}

TEST_CASE("decoherence time examples") {
    const auto cfg = thermal(3.0);
    const auto t4 = decoherence_time({4.0, 0.0, 0.0, 0.0}, cfg);
    CHECK(t4.value == doctest::Approx(1.0 / (2.0 * 0.3 * 11.0)).epsilon(1e-14));
    CHECK(t4.value == doctest::Approx(0.15152).epsilon(1e-4));
    CHECK(t4.variant == TimeVariant::r0);
    CHECK(decoherence_time({1.0, 0.0, 0.0, 0.0}, cfg).value == doctest::Approx(0.83333).epsilon(1e-5));
    CHECK(decoherence_time({0.25, 0.0, 0.0, 0.0}, cfg).infinite());
    // The r = 0 shortcut is the general bracket evaluated at r = 0.
    const auto tr = decoherence_time({4.0, 0.2, 0.0, 0.0}, cfg);
    CHECK(tr.variant == TimeVariant::general);
    CHECK(tr.value == doctest::Approx(1.0 / (2.0 * decoherence_rate({4.0, 0.2, 0.0, 0.0}, cfg))));
}

TEST_CASE("high-temperature decoherence and statistical times") {
    const auto cfg = bath(0.2, 0.1, TemperatureSpec::from_epsilon(0.1));
    const InitialStateSpec spec{4.0, 0.0, 0.0, 0.0};
    const auto th = decoherence_time_high_T(spec, cfg);
    CHECK(th.value == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
    CHECK(th.variant == TimeVariant::high_T_r0);
    const auto td = statistical_time(spec, cfg);
    CHECK(td.value == doctest::Approx(1.0 / 24.5).epsilon(1e-12));
    // With strong squeezing both scales coincide.
    const InitialStateSpec wide{16.0, 0.0, 0.0, 0.0};
    const double ratio =
        decoherence_time_high_T(wide, cfg).value / statistical_time(wide, cfg).value;
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
}

TEST_CASE("short-time sigma slope matches the closed form") {
    for (double r : {0.0, 0.3, -0.5})
        for (double c : {1.0, 3.0, 12.0}) {
            const auto cfg = thermal(c);
            const InitialStateSpec spec{2.5, r, 0.0, 0.0};
            const auto f = [&](double t) { return sigma_det_closed(spec, cfg, t); };
            const double fd = derivative_at_zero(f, 1e-5);
            const double h = 1e-3;
            const double expansion = (sigma_short_time(spec, cfg, h) - sigma_short_time(spec, cfg, 0.0)) / h;
            CHECK(sigma_short_time(spec, cfg, 0.0) == doctest::Approx(0.25));
            CHECK(expansion == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
}

TEST_CASE("pure decoherence factor") {
    const auto cfg = thermal(3.0);
    const auto d = thermal_coefficients(cfg);
    CHECK(d.d_pp == doctest::Approx(0.45));
    CHECK(pure_decoherence_factor(d, 1.0, 1.0, -1.0, 1.0) ==
          doctest::Approx(std::exp(-1.8)).epsilon(1e-15));
    CHECK(pure_decoherence_factor(d, 1.0, 1.0, -1.0, 1.0) == doctest::Approx(0.16530).epsilon(1e-4));
    CHECK(pure_decoherence_factor(d, 1.0, 0.7, 0.7, 5.0) == 1.0);
}

TEST_CASE("relaxation to decoherence rate ratio") {
    const auto cfg = bath(0.2, 0.0, TemperatureSpec::from_coth(3.0));
    const auto r = rate_ratio(cfg, 1.0);
    CHECK(r.exact == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(rate_ratio(cfg, 0.5).exact == doctest::Approx(0.25 * r.exact));
    // High-temperature form is the large-C limit of the exact one.
    const auto hot = bath(0.2, 0.0, TemperatureSpec::from_coth(1e4));
    const auto rh = rate_ratio(hot, 1.0);
    CHECK(rh.high_T == doctest::Approx(rh.exact).epsilon(1e-6));
    CHECK_THROWS_AS(rate_ratio(thermal(3.0), 1.0), ValidationError);
    CHECK(std::isinf(relaxation_time(OscillatorConfig::closed())));
}

TEST_CASE("uncertainty regimes") {
    const auto mid = regime_report(thermal(3.0));
    CHECK(mid.sigma_be == doctest::Approx(2.25));
    CHECK(mid.sigma_heisenberg == doctest::Approx(0.25));
    // kT = 1 / (2 artanh(1/3)).
    const double kt = 0.5 / std::atanh(1.0 / 3.0);
    CHECK(mid.sigma_mb == doctest::Approx(kt * kt).epsilon(1e-13));
    CHECK(mid.sigma_mb == doctest::Approx(2.0815).epsilon(1e-4));
    CHECK(mid.label == "quantum-statistical");
    CHECK(regime_report(bath(0.2, 0.1, TemperatureSpec::zero())).label == "quantum");
    CHECK(regime_report(thermal(100.0)).label == "classical-statistical");
}

TEST_CASE("time-scale invariants over a parameter grid") {
    for (double lambda : {0.15, 0.3, 0.6})
        for (double c : {10.0, 20.0, 50.0})
            for (double delta : {4.0, 8.0, 16.0}) {
                const auto cfg = bath(lambda, 0.1, TemperatureSpec::from_coth(c));
                const auto ts = time_scales({delta, 0.0, 0.0, 0.0}, cfg);
                const double a = ts.t_deco.value / ts.t_deco_high_T.value;
                const double b = ts.t_deco_high_T.value / ts.t_d.value;
                CHECK(a >= 0.9);
                CHECK(a <= 1.1);
                CHECK(b >= 0.9);
                CHECK(b <= 1.1);
                CHECK(ts.t_deco.value < ts.t_rel);
                const auto reg = regime_report(cfg);
                CHECK(reg.sigma_be >= reg.sigma_heisenberg);
            }
}

TEST_CASE("report renders infinite times as inf") {
    const auto cfg = bath(0.2, 0.0, TemperatureSpec::zero());
    const auto rep = deco_report({1.0, 0.0, 0.0, 0.0}, cfg);
    const auto text = deco_report_text(rep);
    CHECK(text.find("t_deco = inf\n") != std::string::npos);
    CHECK(text.find("t_deco.decoheres = no\n") != std::string::npos);
    CHECK(text.find("regime = quantum\n") != std::string::npos);
    const auto j = nlohmann::json::parse(deco_report_json(rep));
    CHECK(j["t_deco"] == "inf");
    CHECK(j["t_rel"].get<double>() == doctest::Approx(5.0));
}
