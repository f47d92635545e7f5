// test_classicality.cpp - decoherence/correlation degrees, contours, classicality windows

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lindosc/classicality.hpp"
#include "lindosc/errors.hpp"

using namespace lindosc;

namespace {

OscillatorConfig thermal(double coth) {
    OscillatorConfig cfg;
    cfg.lambda = 0.2;
    cfg.mu = 0.1;
    cfg.temp = TemperatureSpec::from_coth(coth);
    return cfg;
}

TrajectorySample closed_sample(const InitialStateSpec& spec, const OscillatorConfig& cfg,
                               double t) {
    return {closed_form_state(spec, cfg, t), sigma_det_closed(spec, cfg, t)};
}

} // namespace

TEST_CASE("initial pure state has delta_qd = 1") {
    const auto cfg = thermal(3.0);
    for (double r : {0.0, 0.5}) {
        const auto s0 = initial_state({4.0, r, 0.0, 0.0}, cfg);
        CHECK(delta_qd(s0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(delta_qd(alpha_beta_gamma(s0)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(std::isinf(delta_cc(initial_state({4.0, 0.0, 0.0, 0.0}, cfg))));
}

TEST_CASE("asymptotic degree of decoherence is 1/C") {
    for (double c : {1.5, 3.0, 20.0}) {
        const auto cfg = thermal(c);
        CHECK(delta_qd_asymptotic(cfg) == doctest::Approx(1.0 / c).epsilon(1e-15));
        CHECK(delta_qd(asymptotic_covariance(cfg)) == doctest::Approx(1.0 / c).epsilon(1e-14));
    }
}

TEST_CASE("both delta_cc expressions agree") {
    const auto cfg = thermal(3.0);
    const InitialStateSpec spec{4.0, 0.3, 0.0, 0.0};
    for (double t : {0.2, 1.0, 3.7}) {
        const auto s = closed_form_state(spec, cfg, t);
        CHECK(delta_cc(s) == doctest::Approx(delta_cc(alpha_beta_gamma(s))).epsilon(1e-12));
    }
}

TEST_CASE("closed-system delta_cc formula against the moments") {
    const auto cfg = OscillatorConfig::closed();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.01, 6.0);
    for (double delta : {0.5, 2.0, 4.0})
        for (int k = 0; k < 20; ++k) {
            const double t = u(rng);
            const auto smp = closed_sample({delta, 0.0, 0.0, 0.0}, cfg, t);
            CHECK(delta_cc_closed_system(delta, cfg, t) ==
                  doctest::Approx(classicality_metrics(smp).delta_cc).epsilon(1e-9));
            CHECK(classicality_metrics(smp).delta_qd == doctest::Approx(1.0).epsilon(1e-13));
        }
    CHECK(std::isinf(delta_cc_closed_system(4.0, cfg, std::numbers::pi / 2.0)));
    CHECK(std::isinf(delta_cc_closed_system(4.0, cfg, 0.0)));
    CHECK(std::isinf(delta_cc_closed_system(1.0, cfg, 0.3)));
    CHECK_THROWS_AS(delta_cc_closed_system(4.0, thermal(3.0), 0.3), ValidationError);
}

TEST_CASE("1-sigma contour: points, area and delta_qd") {
    const auto cfg = thermal(3.0);
    const auto s = closed_form_state({4.0, 0.3, 6.0, 4.0}, cfg, 1.2);
    const auto c = one_sigma_contour(s, 2000);
    const double sigma = s.uncertainty();
    for (std::size_t k = 0; k < c.points.size(); k += 97) {
        const double x = c.points[k].q - s.mean_q, y = c.points[k].p - s.mean_p;
        const double form = (s.s_pp * x * x + s.s_qq * y * y - 2.0 * s.s_pq * x * y) / (2.0 * sigma);
        CHECK(form == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(c.area == doctest::Approx(2.0 * std::numbers::pi * std::sqrt(sigma)).epsilon(1e-12));
    CHECK(polygon_area(c.points) == doctest::Approx(c.area).epsilon(1e-5));
    CHECK(delta_qd(s) == doctest::Approx(std::numbers::pi / c.area).epsilon(1e-12));
    CHECK_THROWS_AS(one_sigma_contour(s, 4), ValidationError);
}

TEST_CASE("correlation axes ratio equals delta_cc") {
    const auto cfg = thermal(3.0);
    const auto s = closed_form_state({4.0, 0.0, 0.0, 0.0}, cfg, 0.8);
    const auto ax = correlation_axes(s);
    CHECK(ax.width / ax.length == doctest::Approx(delta_cc(s)).epsilon(1e-12));
}

TEST_CASE("classicality window for delta=4, C=3") {
    const auto cfg = thermal(3.0);
    const InitialStateSpec spec{4.0, 0.0, 0.0, 0.0};
    const auto traj = sample_closed_form(spec, cfg, uniform_times(20.0, 0.01));
    const auto refine = [&](double t) { return closed_sample(spec, cfg, t); };
    const auto w = classicality_window(traj, 0.99, 10.0, 1.0, refine);
    REQUIRE_FALSE(w.empty());
    CHECK(w.front().begin > 0.0);
    CHECK(w.front().end > w.front().begin);
    CHECK(std::isfinite(w.back().end));
    // At an interior boundary one of the two degrees sits on its threshold.
    const auto m = classicality_metrics(refine(w.front().end));
    const bool on_edge = std::abs(m.delta_qd - 0.99) < 1e-5 || std::abs(m.delta_cc - 10.0) < 1e-3;
    CHECK(on_edge);

    const auto coarse = classicality_window(traj, 0.99, 10.0);
    CHECK(coarse.size() == w.size());
    CHECK(coarse.front().begin == doctest::Approx(w.front().begin).epsilon(0.5));
}

TEST_CASE("closed system with a coherent state never becomes classical") {
    const auto cfg = OscillatorConfig::closed();
    const auto traj = sample_closed_form({1.0, 0.0, 0.0, 0.0}, cfg, uniform_times(10.0, 0.1));
    CHECK(classicality_window(traj, 0.99, 10.0).empty());
}

TEST_CASE("window needs two samples and positive thresholds") {
    const auto cfg = thermal(3.0);
    const auto one = sample_closed_form({4.0, 0.0, 0.0, 0.0}, cfg, {0.0});
    CHECK_THROWS_AS(classicality_window(one, 0.99, 10.0), ValidationError);
    const auto two = sample_closed_form({4.0, 0.0, 0.0, 0.0}, cfg, {0.0, 1.0});
    CHECK_THROWS_AS(classicality_window(two, 0.0, 10.0), ValidationError);
}

TEST_CASE("metrics CSV uses inf for uncorrelated states") {
    const auto cfg = thermal(3.0);
    const auto traj = sample_closed_form({4.0, 0.0, 0.0, 0.0}, cfg, {0.0, 0.5});
    const auto csv = metrics_csv(classicality_metrics(traj));
    CHECK(csv.rfind("t,delta_qd,delta_cc,gamma,sigma_det,sigma_pq\n", 0) == 0);
    CHECK(csv.find("\n0,1,inf,") != std::string::npos);
}
