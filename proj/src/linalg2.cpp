// linalg2.cpp - 2x2 matrix exponential, Lyapunov solve, symmetric eigenpairs

#include "lindosc/linalg2.hpp"

#include <algorithm>
#include <cmath>

namespace lindosc {

double Mat2::frobenius() const {
    return std::sqrt(a * a + b * b + c * c + d * d);
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 operator*(double s, const Mat2& x) {
    return {s * x.a, s * x.b, s * x.c, s * x.d};
}

Vec2 operator*(const Mat2& x, const Vec2& v) {
    return {x.a * v.q + x.b * v.p, x.c * v.q + x.d * v.p};
}

Mat2 expm(const Mat2& m, double t) {
    // M = s I + N with tr N = 0, so N^2 = disc I and exp(N t) = f I + g N.
    const double s = 0.5 * m.trace();
    const double disc = s * s - m.det();
    const double z = disc * t * t;
    double f = 0.0;
    double g = 0.0;
    if (std::abs(z) < 1e-8) {
        f = 1.0 + 0.5 * z + z * z / 24.0;
        g = t * (1.0 + z / 6.0 + z * z / 120.0);
    } else if (disc < 0.0) {
        const double w = std::sqrt(-disc);
        f = std::cos(w * t);
        g = std::sin(w * t) / w;
    } else {
        const double w = std::sqrt(disc);
        f = std::cosh(w * t);
        g = std::sinh(w * t) / w;
    }
    const double e = std::exp(s * t);
    const Mat2 n{m.a - s, m.b, m.c, m.d - s};
    return {e * (f + g * n.a), e * g * n.b, e * g * n.c, e * (f + g * n.d)};
}

std::optional<Mat2> solve_lyapunov(const Mat2& y, const Mat2& q) {
    // Unknowns (x, z, w) of X = [[x, z], [z, w]]:
    //   2a x + 2b z           = -q11
    //    c x + (a+d) z + b w  = -q12
    //          2c z   + 2d w  = -q22
    const double a = y.a, b = y.b, c = y.c, d = y.d;
    const double det = 4.0 * (a + d) * (a * d - b * c);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (!(std::abs(det) > 1e-14 * scale * scale * scale)) return std::nullopt;

    const double r1 = -q.a, r2 = -0.5 * (q.b + q.c), r3 = -q.d;
    // Cramer's rule on the 3x3 system.
    auto det3 = [](double m11, double m12, double m13, double m21, double m22, double m23,
                   double m31, double m32, double m33) {
        return m11 * (m22 * m33 - m23 * m32) - m12 * (m21 * m33 - m23 * m31) +
               m13 * (m21 * m32 - m22 * m31);
    };
    const double x = det3(r1, 2 * b, 0, r2, a + d, b, r3, 2 * c, 2 * d) / det;
    const double z = det3(2 * a, r1, 0, c, r2, b, 0, r3, 2 * d) / det;
    const double w = det3(2 * a, 2 * b, r1, c, a + d, r2, 0, 2 * c, r3) / det;
    return Mat2::symmetric(x, w, z);
}

SymmetricEigen eigen_symmetric(const Mat2& s) {
    const double mean = 0.5 * (s.a + s.d);
    const double half_diff = 0.5 * (s.a - s.d);
    const double off = 0.5 * (s.b + s.c);
    const double rad = std::hypot(half_diff, off);
    SymmetricEigen e;
    e.major = mean + rad;
    e.minor = mean - rad;
    e.angle = 0.5 * std::atan2(2.0 * off, s.a - s.d);
    return e;
}

} // namespace lindosc
