#pragma once

// Test-side oracles, kept independent of the library code paths they check.

#include "vcl/field.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// plain O(N^2) Fourier summation at one point, written against the raw
// coefficient array (no shared code with vcl::interpolate)
inline double fourier_sum_at(const vcl::ScalarField2D& f, double x, double y) {
    const vcl::Grid2D& g = f.grid();
    auto c = f.coefficients();
    std::complex<double> acc = 0;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const double ph = kPi * (g.mode(i1) * x + g.mode(i2) * y);
            acc += c[static_cast<std::size_t>(i1) * g.n() + i2] *
                   std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }
    return acc.real();
}

// second-order centered finite-difference curl on the periodic grid
inline double fd_curl_at(const vcl::VectorField2D& u, int i1, int i2) {
    const vcl::Grid2D& g = u.grid();
    const int n = g.n();
    const double h = g.spacing();
    auto vx = u.x.values();
    auto vy = u.y.values();
    auto at = [&](std::span<const double> v, int a, int b) {
        return v[static_cast<std::size_t>((a + n) % n) * n + ((b + n) % n)];
    };
    const double d1u2 = (at(vy, i1 + 1, i2) - at(vy, i1 - 1, i2)) / (2 * h);
    const double d2u1 = (at(vx, i1, i2 + 1) - at(vx, i1, i2 - 1)) / (2 * h);
    return d1u2 - d2u1;
}

// adaptive Simpson in 1D
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 24) {
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fhi, double fmid, double whole,
            int d) -> double {
        const double m = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - lo) / 6 * (flo + 4 * flm + fmid);
        const double right = (hi - m) / 6 * (fmid + 4 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15 * tol)
            return left + right + (left + right - whole) / 15;
        return rec(lo, m, flo, fmid, flm, left, d - 1) + rec(m, hi, fmid, fhi, frm, right, d - 1);
    };
    const double whole = (b - a) / 6 * (fa + 4 * fc + fb);
    return rec(a, b, fa, fb, fc, whole, depth);
}

// adaptive 2D quadrature by iterated adaptive Simpson
inline double adaptive_quad_2d(const std::function<double(double, double)>& f, double ax,
                               double bx, double ay, double by, double tol) {
    return adaptive_simpson(
        [&](double x) {
            return adaptive_simpson([&](double y) { return f(x, y); }, ay, by, tol * 0.1);
        },
        ax, bx, tol);
}

// forward-Euler pseudo-spectral vorticity step (tiny dt reference)
inline vcl::ScalarField2D euler_step_oracle(const vcl::ScalarField2D& omega, double dt) {
    using namespace vcl;
    const Grid2D& g = omega.grid();
    const ScalarField2D om = omega.dealiased();
    const VectorField2D u = biot_savart_2d(om);
    const ScalarField2D adv = u.x.dealiased() * om.dx() + u.y.dealiased() * om.dy();
    const ScalarField2D advd = adv.dealiased();
    auto a = omega.values();
    auto b = advd.values();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - dt * b[i];
    return ScalarField2D::from_values(g, std::move(out));
}

} // namespace oracle
