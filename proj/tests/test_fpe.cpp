// test_fpe.cpp - finite-difference Fokker-Planck integrator against Gaussian propagation

#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "lindosc/errors.hpp"
#include "lindosc/fpe.hpp"
#include "lindosc/propagate.hpp"

using namespace lindosc;

namespace {

OscillatorConfig thermal(double lambda, double mu, double coth) {
    OscillatorConfig cfg;
    cfg.lambda = lambda;
    cfg.mu = mu;
    cfg.temp = TemperatureSpec::from_coth(coth);
    return cfg;
}

struct Setup {
    OscillatorConfig cfg;
    DiffusionCoefficients d;
    GaussianState s0;
    GridGeometry geom;
};

Setup squeezed_setup(std::size_t n, InitialStateSpec spec = {4.0, 0.0, 0.0, 0.0}) {
    Setup s;
    s.cfg = thermal(0.2, 0.1, 3.0);
    s.d = thermal_coefficients(s.cfg);
    s.s0 = initial_state(spec, s.cfg);
    s.geom = fpe_domain(s.s0, s.cfg, s.d, n, n);
    return s;
}

FpeRunSpec run_to(double t_end, AdvectionScheme scheme = AdvectionScheme::central) {
    FpeRunSpec run;
    run.dt = 2e-4;
    run.t_end = t_end;
    run.scheme = scheme;
    return run;
}

double evolved_l2(std::size_t n, AdvectionScheme scheme) {
    const auto s = squeezed_setup(n);
    const auto res = evolve_wigner(render_grid(s.s0, s.geom), s.cfg, s.d, run_to(0.5, scheme));
    return l2_distance(res.grid, render_grid(covariance_lyapunov(s.s0, s.cfg, s.d, 0.5), s.geom));
}

} // namespace

TEST_CASE("run validation") {
    const auto s = squeezed_setup(64);
    const auto w0 = render_grid(s.s0, s.geom);
    const double limit = stable_time_step(s.geom, s.cfg, s.d);
    CHECK(limit > 0.0);
    FpeRunSpec run = run_to(0.1);
    run.dt = 1.01 * stable_time_step(s.geom, s.cfg, s.d, 1.0);
    CHECK_THROWS_AS(evolve_wigner(w0, s.cfg, s.d, run), ValidationError);

    auto unnormalised = w0;
    for (auto& v : unnormalised.values()) v *= 1.01;
    CHECK_THROWS_AS(evolve_wigner(unnormalised, s.cfg, s.d, run_to(0.1)), ValidationError);
}

TEST_CASE("non-finite values abort the run") {
    const auto s = squeezed_setup(64);
    auto w0 = render_grid(s.s0, s.geom);
    const double big = std::numeric_limits<double>::max();
    w0.at(10, 10) = big;
    w0.at(10, 11) = -big;
    try {
        evolve_wigner(w0, s.cfg, s.d, run_to(0.01));
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("stationary state keeps its moments") {
    const auto cfg = thermal(0.2, 0.1, 3.0);
    const auto d = thermal_coefficients(cfg);
    const auto geom = covering_geometry({asymptotic_covariance(cfg)}, 6.0, 128, 128);
    PhaseSpaceGrid w0(geom);
    for (std::size_t i = 0; i < geom.n_q; ++i)
        for (std::size_t j = 0; j < geom.n_p; ++j)
            w0.at(i, j) = wigner_stationary(cfg, geom.q(i), geom.p(j));
    const auto res = evolve_wigner(w0, cfg, d, run_to(0.5));
    const auto m = grid_moments(res.grid);
    CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(m.state.s_qq == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(m.state.s_pp == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(std::abs(m.state.s_pq) < 1e-3);
    CHECK(std::abs(m.state.mean_q) < 1e-3);
    CHECK(res.telemetry.max_mass_drift < 1e-3);
}

TEST_CASE("displaced state follows the damped centroid") {
    auto s = squeezed_setup(128, {4.0, 0.0, 1.0, -0.5});
    const auto res = evolve_wigner(render_grid(s.s0, s.geom), s.cfg, s.d, run_to(0.5));
    const auto m = grid_moments(res.grid);
    const Vec2 exact = mean_closed_form(s.s0, s.cfg, 0.5);
    CHECK(m.state.mean_q == doctest::Approx(exact.q).epsilon(1e-3).scale(1.0));
    CHECK(m.state.mean_p == doctest::Approx(exact.p).epsilon(1e-3).scale(1.0));
    CHECK(res.telemetry.min_value >= -1e-6);
    CHECK(res.telemetry.max_mass_drift < 1e-3);
}

TEST_CASE("correlated state: covariance against the closed form") {
    const InitialStateSpec spec{4.0, 0.3, 0.0, 0.0};
    auto s = squeezed_setup(128, spec);
    const auto res = evolve_wigner(render_grid(s.s0, s.geom), s.cfg, s.d, run_to(0.5));
    const auto m = grid_moments(res.grid);
    CHECK(m.state.s_pq == doctest::Approx(sigma_pq_closed(spec, s.cfg, 0.5)).epsilon(2e-3).scale(1.0));
    CHECK(m.state.uncertainty() ==
          doctest::Approx(sigma_det_closed(spec, s.cfg, 0.5)).epsilon(2e-3));
}

TEST_CASE("advection schemes: upwind is first order, central is more accurate") {
    const double up64 = evolved_l2(64, AdvectionScheme::upwind);
    const double up128 = evolved_l2(128, AdvectionScheme::upwind);
    const double c128 = evolved_l2(128, AdvectionScheme::central);
    const double ratio = up64 / up128;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.6);
    CHECK(c128 < up128);
}

TEST_CASE("free-diffusion limit without coordinate diffusion") {
    // lambda = mu leaves the coordinate drift undamped; D_qq = 0 keeps the q diffusion off.
    const auto cfg = thermal(0.1, 0.1, 1.0);
    const DiffusionCoefficients d{0.2, 0.0, 0.0};
    const auto s0 = initial_state({4.0, 0.0, 0.5, -0.3}, cfg);
    const auto geom = fpe_domain(s0, cfg, d, 128, 128);
    const auto res = evolve_wigner(render_grid(s0, geom), cfg, d, run_to(1.0));
    const auto m = grid_moments(res.grid).state;
    const auto exact = covariance_lyapunov(s0, cfg, d, 1.0);
    CHECK(m.mean_q == doctest::Approx(exact.mean_q).epsilon(1e-3).scale(1.0));
    CHECK(m.mean_p == doctest::Approx(exact.mean_p).epsilon(1e-3).scale(1.0));
    CHECK(m.s_qq == doctest::Approx(exact.s_qq).epsilon(1e-3).scale(1.0));
    CHECK(m.s_pp == doctest::Approx(exact.s_pp).epsilon(1e-3).scale(1.0));
    CHECK(m.s_pq == doctest::Approx(exact.s_pq).epsilon(1e-3).scale(1.0));
}

TEST_CASE("snapshots, zero duration and manifest") {
    const auto s = squeezed_setup(48);
    const auto w0 = render_grid(s.s0, s.geom);
    auto run = run_to(0.2);
    run.snapshot_times = {0.05, 0.1};
    const auto res = evolve_wigner(w0, s.cfg, s.d, run);
    REQUIRE(res.snapshots.size() == 2);
    CHECK(res.snapshots[0].t == doctest::Approx(0.05));
    CHECK(res.snapshots[1].t == doctest::Approx(0.1));
    CHECK(res.telemetry.steps == 1000);

    const auto still = evolve_wigner(w0, s.cfg, s.d, run_to(0.0));
    CHECK(still.telemetry.steps == 0);
    CHECK(still.grid.values() == w0.values());

    const auto j = nlohmann::json::parse(
        fpe_manifest_json(s.cfg, s.d, s.geom, run, res.telemetry, {"final.csv"}));
    CHECK(j.is_object());
    CHECK(j.dump().find("final.csv") != std::string::npos);
}
