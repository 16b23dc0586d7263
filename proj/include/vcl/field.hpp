#pragma once

#include "vcl/fft.hpp"
#include "vcl/grid.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace vcl {

using cplx = std::complex<double>;

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

// Immutable doubly periodic scalar grid function with paired physical and
// spectral views. Whichever view was not supplied is computed on first use;
// copies share storage. Coefficients are the true Fourier coefficients c_m
// of e^{i pi m.x} in fft index order, conjugate-symmetric for real fields.
class ScalarField2D {
public:
    static ScalarField2D from_values(const Grid2D& g, std::vector<double> v);
    static ScalarField2D from_coefficients(const Grid2D& g, std::vector<cplx> c);
    static ScalarField2D zeros(const Grid2D& g);
    static ScalarField2D sample(const Grid2D& g, const std::function<double(double, double)>& f);

    const Grid2D& grid() const { return r_->g; }
    std::span<const double> values() const;
    std::span<const cplx> coefficients() const;

    double value(int i1, int i2) const { return values()[static_cast<std::size_t>(i1) * grid().n() + i2]; }
    cplx coefficient(int m1, int m2) const;

    double mean() const;     // torus average = c_{0,0}
    double max_abs() const;
    double l2_sq() const;    // \int f^2 over the area-4 torus (Parseval)

    // new field with coefficients multiplied by f(m1, m2); f must satisfy
    // f(-m) = conj(f(m)) so the result stays real
    ScalarField2D multiplier(const std::function<cplx(int, int)>& f) const;
    ScalarField2D dealiased() const;   // 2/3-rule truncation
    ScalarField2D dx() const;          // spectral d/dx1 (Nyquist zeroed)
    ScalarField2D dy() const;

    friend ScalarField2D operator+(const ScalarField2D& a, const ScalarField2D& b);
    friend ScalarField2D operator-(const ScalarField2D& a, const ScalarField2D& b);
    friend ScalarField2D operator*(const ScalarField2D& a, const ScalarField2D& b); // pointwise
    friend ScalarField2D operator*(double s, const ScalarField2D& a);

private:
    struct Repr {
        Grid2D g;
        mutable std::once_flag vals_once, coefs_once;
        mutable std::vector<double> vals;
        mutable std::vector<cplx> coefs;
        explicit Repr(const Grid2D& gg) : g(gg) {}
    };
    explicit ScalarField2D(std::shared_ptr<Repr> r) : r_(std::move(r)) {}
    std::shared_ptr<Repr> r_;
};

struct VectorField2D {
    ScalarField2D x, y;
    const Grid2D& grid() const { return x.grid(); }
    double max_abs() const { return std::max(x.max_abs(), y.max_abs()); }
};

// trapezoid == spectral quadrature of f over the torus
double integral(const ScalarField2D& f);

} // namespace vcl
