// quadrature.hpp - composite Simpson integration with successive refinement

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include "lindosc/errors.hpp"

namespace lindosc {

/// Composite Simpson on a uniform grid over [a, b], doubling the panel count until two
/// successive estimates differ by less than `tol`.
template <class F>
auto simpson_refined(F&& f, double a, double b, double tol = 1e-9, std::size_t initial = 64,
                     std::size_t max_panels = std::size_t{1} << 22) {
    using R = decltype(f(a));
    auto simpson = [&](std::size_t n) {
        const double h = (b - a) / static_cast<double>(n);
        R acc = f(a) + f(b);
        for (std::size_t i = 1; i < n; ++i)
            acc += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
        return acc * (h / 3.0);
    };
    std::size_t n = initial + initial % 2;
    R prev = simpson(n);
    while (n < max_panels) {
        n *= 2;
        R next = simpson(n);
        if (std::abs(next - prev) < tol) return next;
        prev = next;
    }
    throw NumericError("simpson_refined: no convergence");
}

} // namespace lindosc
