#include "vcl/field.hpp"

#include <algorithm>
#include <cmath>

namespace vcl {

ScalarField2D ScalarField2D::from_values(const Grid2D& g, std::vector<double> v) {
    if (v.size() != g.size()) throw ConfigError("from_values: size mismatch");
    auto r = std::make_shared<Repr>(g);
    r->vals = std::move(v);
    std::call_once(r->vals_once, [] {});
    return ScalarField2D(std::move(r));
}

ScalarField2D ScalarField2D::from_coefficients(const Grid2D& g, std::vector<cplx> c) {
    if (c.size() != g.size()) throw ConfigError("from_coefficients: size mismatch");
    auto r = std::make_shared<Repr>(g);
    r->coefs = std::move(c);
    std::call_once(r->coefs_once, [] {});
    return ScalarField2D(std::move(r));
}

ScalarField2D ScalarField2D::zeros(const Grid2D& g) {
    return from_values(g, std::vector<double>(g.size(), 0.0));
}

ScalarField2D ScalarField2D::sample(const Grid2D& g, const std::function<double(double, double)>& f) {
    std::vector<double> v(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const double x1 = g.coord(i1);
        double* row = v.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) row[i2] = f(x1, g.coord(i2));
    }
    return from_values(g, std::move(v));
}

std::span<const double> ScalarField2D::values() const {
    std::call_once(r_->vals_once, [this] {
        r_->vals.resize(r_->g.size());
        fft::inverse(r_->g, r_->coefs.data(), r_->vals.data());
    });
    return r_->vals;
}

std::span<const cplx> ScalarField2D::coefficients() const {
    std::call_once(r_->coefs_once, [this] {
        r_->coefs.resize(r_->g.size());
        fft::forward(r_->g, r_->vals.data(), r_->coefs.data());
    });
    return r_->coefs;
}

cplx ScalarField2D::coefficient(int m1, int m2) const {
    const Grid2D& g = grid();
    return coefficients()[static_cast<std::size_t>(g.index_of_mode(m1)) * g.n() + g.index_of_mode(m2)];
}

double ScalarField2D::mean() const { return coefficient(0, 0).real(); }

double ScalarField2D::max_abs() const {
    double m = 0;
    for (double v : values()) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField2D::l2_sq() const {
    double s = 0;
    for (const cplx& c : coefficients()) s += std::norm(c);
    return 4.0 * s;
}

ScalarField2D ScalarField2D::multiplier(const std::function<cplx(int, int)>& f) const {
    const Grid2D& g = grid();
    auto c = coefficients();
    std::vector<cplx> out(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const int m1 = g.mode(i1);
        const cplx* src = c.data() + static_cast<std::size_t>(i1) * g.n();
        cplx* dst = out.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) dst[i2] = src[i2] * f(m1, g.mode(i2));
    }
    return from_coefficients(g, std::move(out));
}

ScalarField2D ScalarField2D::dealiased() const {
    const Grid2D& g = grid();
    const int cut = g.dealias_cut();
    auto c = coefficients();
    std::vector<cplx> out(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const bool ok1 = std::abs(g.mode(i1)) <= cut;
        const cplx* src = c.data() + static_cast<std::size_t>(i1) * g.n();
        cplx* dst = out.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2)
            dst[i2] = (ok1 && std::abs(g.mode(i2)) <= cut) ? src[i2] : cplx{};
    }
    return from_coefficients(g, std::move(out));
}

namespace {
ScalarField2D derivative(const ScalarField2D& f, bool along_x) {
    const Grid2D& g = f.grid();
    const int nyq = -g.n() / 2;
    auto c = f.coefficients();
    std::vector<cplx> out(g.size());
    const double pi = std::numbers::pi;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const int m1 = g.mode(i1);
        const cplx* src = c.data() + static_cast<std::size_t>(i1) * g.n();
        cplx* dst = out.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const int m2 = g.mode(i2);
            const int m = along_x ? m1 : m2;
            dst[i2] = (m == nyq) ? cplx{} : src[i2] * cplx(0.0, pi * m);
        }
    }
    return ScalarField2D::from_coefficients(g, std::move(out));
}
} // namespace

ScalarField2D ScalarField2D::dx() const { return derivative(*this, true); }
ScalarField2D ScalarField2D::dy() const { return derivative(*this, false); }

namespace {
template <class Op>
ScalarField2D zip_values(const ScalarField2D& a, const ScalarField2D& b, Op op) {
    if (a.grid() != b.grid()) throw ConfigError("field op: grid mismatch");
    auto va = a.values();
    auto vb = b.values();
    std::vector<double> out(va.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(va[i], vb[i]);
    return ScalarField2D::from_values(a.grid(), std::move(out));
}
} // namespace

ScalarField2D operator+(const ScalarField2D& a, const ScalarField2D& b) {
    return zip_values(a, b, [](double x, double y) { return x + y; });
}
ScalarField2D operator-(const ScalarField2D& a, const ScalarField2D& b) {
    return zip_values(a, b, [](double x, double y) { return x - y; });
}
ScalarField2D operator*(const ScalarField2D& a, const ScalarField2D& b) {
    return zip_values(a, b, [](double x, double y) { return x * y; });
}
ScalarField2D operator*(double s, const ScalarField2D& a) {
    auto va = a.values();
    std::vector<double> out(va.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * va[i];
    return ScalarField2D::from_values(a.grid(), std::move(out));
}

double integral(const ScalarField2D& f) {
    return 4.0 * f.mean();
}

} // namespace vcl
