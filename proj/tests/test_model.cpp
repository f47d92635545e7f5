// test_model.cpp - parameters, bath coefficients, constraints, initial states, config files

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "lindosc/config_io.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/model.hpp"

using namespace lindosc;

namespace {

OscillatorConfig thermal(double lambda, double mu, double coth) {
    OscillatorConfig cfg;
    cfg.lambda = lambda;
    cfg.mu = mu;
    cfg.temp = TemperatureSpec::from_coth(coth);
    return cfg;
}

} // namespace

TEST_CASE("thermal coefficients for lambda=0.2, mu=0.1, C=3") {
    const auto d = thermal_coefficients(thermal(0.2, 0.1, 3.0));
    CHECK(d.d_pp == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(d.d_qq == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(d.d_pq == 0.0);
    CHECK(validate(thermal(0.2, 0.1, 3.0), d).ok());
}

TEST_CASE("coefficients scale with mass and frequency as D_pp ~ m omega, D_qq ~ 1/(m omega)") {
    auto cfg = thermal(0.2, 0.1, 3.0);
    cfg.m = 2.0;
    cfg.omega = 3.0;
    const auto d = thermal_coefficients(cfg);
    CHECK(d.d_pp == doctest::Approx(0.45 * 6.0));
    CHECK(d.d_qq == doctest::Approx(0.15 / 6.0));
}

TEST_CASE("lambda <= mu is rejected") {
    CHECK_THROWS_AS(thermal_coefficients(thermal(0.05, 0.1, 3.0)), ValidationError);
    CHECK_THROWS_AS(thermal_coefficients(thermal(0.1, 0.1, 3.0)), ValidationError);
    const auto cfg = thermal(0.05, 0.1, 3.0);
    const auto rep = validate(cfg, thermal_formula(cfg));
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.find("lambda_exceeds_mu")->passed);
}

TEST_CASE("thermal constraint fails at C=1.1 and holds at its boundary") {
    const auto cold = thermal(0.2, 0.1, 1.1);
    const auto rep = validate(cold, thermal_coefficients(cold));
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.find("thermal_constraint")->passed);
    CHECK_FALSE(rep.find("diffusion_determinant")->passed);

    const double c_min = 0.2 / std::sqrt(0.04 - 0.01);
    const auto edge = thermal(0.2, 0.1, c_min);
    CHECK(validate(edge, thermal_coefficients(edge)).ok());
    CHECK(std::abs(thermal_constraint_margin(edge)) < 1e-15);
}

TEST_CASE("T=0 with mu=0 sits exactly on both inequalities") {
    const auto cfg = thermal(0.2, 0.0, 1.0);
    const auto d = thermal_coefficients(cfg);
    CHECK(d.determinant() == doctest::Approx(0.25 * 0.04));
    CHECK(validate(cfg, d).ok());
}

TEST_CASE("the two inequalities agree on random thermal parameters") {
    // For D_pq = 0 the determinant condition is the thermal constraint multiplied by 1/4.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double lambda = 0.05 + u(rng);
        const double mu = lambda * 0.99 * u(rng);
        const double c = 1.0 + 4.0 * u(rng);
        const auto cfg = thermal(lambda, mu, c);
        const auto rep = validate(cfg, thermal_coefficients(cfg));
        CHECK(rep.find("thermal_constraint")->passed == rep.find("diffusion_determinant")->passed);
    }
}

TEST_CASE("weak-coupling check is advisory only") {
    const auto cfg = thermal(0.5, 0.1, 3.0);
    const auto rep = validate(cfg, thermal_coefficients(cfg));
    const auto* weak = rep.find("weak_coupling");
    REQUIRE(weak != nullptr);
    CHECK_FALSE(weak->passed);
    CHECK_FALSE(weak->fatal);
    CHECK(rep.ok());
}

TEST_CASE("overdamped and malformed configurations are rejected") {
    auto cfg = thermal(2.0, 1.5, 3.0);
    CHECK_THROWS_AS(cfg.check(), ValidationError);
    cfg = thermal(0.2, 0.1, 3.0);
    cfg.m = 0.0;
    CHECK_THROWS_AS(cfg.check(), ValidationError);
    CHECK_THROWS_AS(TemperatureSpec::from_coth(0.5), ValidationError);
    CHECK_THROWS_AS(TemperatureSpec::from_temperature(-1.0, 1.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("closed-system mode") {
    const auto cfg = OscillatorConfig::closed();
    const auto d = thermal_coefficients(cfg);
    CHECK(d.d_pp == 0.0);
    CHECK(d.d_qq == 0.0);
    const auto rep = validate(cfg, d);
    CHECK(rep.ok());
    CHECK(rep.find("closed_system")->passed);

    auto bad = cfg;
    bad.lambda = 0.1;
    CHECK_THROWS_AS(bad.check(), ValidationError);
}

TEST_CASE("temperature conversions") {
    const auto t0 = TemperatureSpec::from_temperature(0.0, 1.0, 1.0, 1.0);
    CHECK(t0.coth() == 1.0);
    CHECK(t0.is_zero());
    CHECK(std::isinf(t0.epsilon()));
    CHECK(t0.tau() == 0.0);

    // kT = 1 in units of hbar omega: eps = 1/2.
    const auto t1 = TemperatureSpec::from_temperature(1.0, 1.0, 1.0, 1.0);
    CHECK(t1.epsilon() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t1.coth() == doctest::Approx(1.0 / std::tanh(0.5)).epsilon(1e-14));
    CHECK(t1.thermal_energy(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));

    const auto c3 = TemperatureSpec::from_coth(3.0);
    CHECK(c3.epsilon() == doctest::Approx(0.34657359027997264).epsilon(1e-14));
    CHECK(c3.thermal_energy(1.0, 1.0) == doctest::Approx(1.4426950408889634).epsilon(1e-13));
    CHECK(TemperatureSpec::from_epsilon(0.1).tau() == doctest::Approx(10.0).epsilon(1e-13));
}

TEST_CASE("SI configuration at room temperature") {
    const auto cfg = OscillatorConfig::si_units(1e-3, 1.0, 1.0, 0.0, 300.0);
    CHECK(cfg.hbar == si::hbar);
    const double kt = si::k_boltzmann * 300.0;
    CHECK(cfg.temp.thermal_energy(cfg.hbar, cfg.omega) == doctest::Approx(kt).epsilon(1e-12));
}

TEST_CASE("initial correlated coherent state") {
    OscillatorConfig cfg;
    InitialStateSpec spec;
    spec.delta = 4.0;
    const auto s = initial_state(spec, cfg);
    CHECK(s.s_qq == 2.0);
    CHECK(s.s_pp == 0.125);
    CHECK(s.s_pq == 0.0);
    CHECK(s.uncertainty() == 0.25);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        spec.delta = 0.1 + 10.0 * u(rng);
        spec.r = -0.99 + 1.98 * u(rng);
        CHECK(initial_state(spec, cfg).uncertainty() == doctest::Approx(0.25).epsilon(1e-12));
    }
    spec.r = 1.0;
    CHECK_THROWS_AS(initial_state(spec, cfg), ValidationError);
    spec.r = 0.0;
    spec.delta = 0.0;
    CHECK_THROWS_AS(initial_state(spec, cfg), ValidationError);
}

TEST_CASE("decimal parsing is strict") {
    CHECK(parse_decimal("0.2") == 0.2);
    CHECK(parse_decimal(" +1e-3 ") == 1e-3);
    CHECK_THROWS_AS(parse_decimal(""), ValidationError);
    CHECK_THROWS_AS(parse_decimal("0,2"), ValidationError);
    CHECK_THROWS_AS(parse_decimal("1.5x"), ValidationError);
}

TEST_CASE("config text") {
    const auto v = parse_config_text("# Fig. 2 set\nlambda = 0.2\nmu=0.1  # comment\n\n"
                                     "temp.C = 3\ninit.delta = 4\n");
    CHECK(v.size() == 4);
    const auto rc = build_run_config(v);
    CHECK(rc.osc.lambda == 0.2);
    CHECK(rc.osc.temp.coth() == 3.0);
    CHECK(rc.init.delta == 4.0);

    CHECK_THROWS_AS(parse_config_text("gamma = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("mu = 1\nmu = 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("mu 1\n"), ValidationError);
    CHECK_THROWS_AS(build_run_config({{"temp.C", 3.0}, {"temp.T", 1.0}}), ValidationError);
}

TEST_CASE("config defaults and temperature key") {
    const auto rc = build_run_config({});
    CHECK(rc.osc.lambda == 0.2);
    CHECK(rc.osc.mu == 0.1);
    CHECK(rc.osc.temp.coth() == 3.0);
    CHECK(rc.init.delta == 4.0);
    CHECK(rc.init.r == 0.0);

    const auto hot = build_run_config({{"temp.T", 1.0}});
    CHECK(hot.osc.temp.epsilon() == doctest::Approx(0.5));

    const auto closed = build_run_config({{"closed", 1.0}});
    CHECK(closed.osc.closed_system);
    CHECK(closed.osc.lambda == 0.0);
    CHECK(closed.osc.mu == 0.0);
}

TEST_CASE("config file loading") {
    const auto path = std::filesystem::temp_directory_path() / "lindosc_test_config.txt";
    {
        std::ofstream out(path);
        out << "lambda = 0.3\nmu = 0.05\n";
    }
    const auto v = load_config_file(path);
    CHECK(v.at("lambda") == 0.3);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(path), IoError);
}
