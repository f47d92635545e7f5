// test_linalg2.cpp - 2x2 exponential, Lyapunov solver and eigenpairs against brute force

#include <doctest.h>

#include <cmath>
#include <random>

#include "lindosc/linalg2.hpp"

using namespace lindosc;

namespace {

// Scaling and squaring with a long Taylor series; slow but independent of the spectral form.
Mat2 expm_series(const Mat2& m, double t) {
    int squarings = 0;
    double norm = m.frobenius() * std::abs(t);
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const Mat2 a = std::ldexp(t, -squarings) * m;
    Mat2 term = Mat2::identity();
    Mat2 sum = Mat2::identity();
    for (int k = 1; k < 30; ++k) {
        term = (1.0 / k) * (term * a);
        sum = sum + term;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

double max_abs_diff(const Mat2& x, const Mat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                     std::abs(x.d - y.d)});
}

} // namespace

TEST_CASE("expm matches the Taylor series for complex, real and repeated eigenvalues") {
    const Mat2 cases[] = {
        {-0.1, 1.0, -1.0, -0.3},    // damped oscillator
        {0.5, 2.0, 0.3, -0.2},      // real distinct
        {-0.2, 1.0, 0.0, -0.2},     // repeated, defective
        {0.0, 1.0, -1.0, 0.0},      // pure rotation
        {-0.1, 1.0, -1e-10, -0.1},  // nearly repeated
    };
    for (const auto& m : cases)
        for (double t : {0.0, 0.3, 2.0, 7.5}) {
            const Mat2 e = expm(m, t);
            const Mat2 ref = expm_series(m, t);
            CHECK(max_abs_diff(e, ref) < 1e-12 * std::max(1.0, ref.frobenius()));
        }
}

TEST_CASE("expm on random matrices") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const Mat2 m{u(rng), u(rng), u(rng), u(rng)};
        const double t = 3.0 * (u(rng) + 1.0);
        const Mat2 ref = expm_series(m, t);
        CHECK(max_abs_diff(expm(m, t), ref) < 1e-11 * std::max(1.0, ref.frobenius()));
    }
}

TEST_CASE("expm semigroup property") {
    const Mat2 m{-0.1, 1.0, -1.0, -0.3};
    CHECK(max_abs_diff(expm(m, 1.3) * expm(m, 2.1), expm(m, 3.4)) < 1e-14);
}

TEST_CASE("Lyapunov solution satisfies the equation") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const Mat2 y{u(rng) - 1.0, u(rng), u(rng), u(rng) - 1.0};
        const Mat2 q = Mat2::symmetric(std::abs(u(rng)), std::abs(u(rng)), 0.1 * u(rng));
        const auto x = solve_lyapunov(y, q);
        REQUIRE(x.has_value());
        const Mat2 res = y * *x + *x * y.transpose() + q;
        CHECK(res.frobenius() < 1e-12 * std::max(1.0, x->frobenius()));
        CHECK(x->b == x->c);
    }
}

TEST_CASE("Lyapunov operator is singular for a trace-free drift") {
    CHECK_FALSE(solve_lyapunov({0.0, 1.0, -1.0, 0.0}, Mat2::identity()).has_value());
}

TEST_CASE("symmetric eigenpairs reconstruct the matrix") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const Mat2 s = Mat2::symmetric(u(rng), u(rng), u(rng));
        const auto e = eigen_symmetric(s);
        CHECK(e.major >= e.minor);
        const double c = std::cos(e.angle), sn = std::sin(e.angle);
        const Mat2 r{c, -sn, sn, c};
        const Mat2 back = r * Mat2{e.major, 0.0, 0.0, e.minor} * r.transpose();
        CHECK(max_abs_diff(back, s) < 1e-13);
    }
}
