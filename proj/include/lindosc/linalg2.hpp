// linalg2.hpp - fixed-size 2x2 real algebra for phase-space moments

#pragma once

#include <optional>

namespace lindosc {

struct Vec2 {
    double q{0.0};
    double p{0.0};
};

/// Row-major [[a, b], [c, d]].
struct Mat2 {
    double a{0.0};
    double b{0.0};
    double c{0.0};
    double d{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 symmetric(double xx, double yy, double xy) { return {xx, xy, xy, yy}; }

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    double frobenius() const;
};

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(double s, const Mat2& x);
Vec2 operator*(const Mat2& x, const Vec2& v);

/// exp(M t) from the real spectral form exp(s t)[f(t) I + g(t) (M - s I)], s = tr/2.
/// Covers complex, real and repeated eigenvalue pairs without series truncation.
Mat2 expm(const Mat2& m, double t);

/// Solves Y X + X Y^T + Q = 0 for symmetric X given symmetric Q.
/// Returns nullopt when the Lyapunov operator is singular (eigenvalues of Y summing to zero).
std::optional<Mat2> solve_lyapunov(const Mat2& y, const Mat2& q);

/// Eigen-decomposition of a symmetric matrix: eigenvalues (descending) and the rotation
/// angle of the first eigenvector.
struct SymmetricEigen {
    double major{0.0};
    double minor{0.0};
    double angle{0.0};
};
SymmetricEigen eigen_symmetric(const Mat2& s);

} // namespace lindosc
