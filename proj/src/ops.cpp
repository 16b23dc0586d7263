#include "vcl/ops.hpp"

#include <cmath>
#include <numbers>

namespace vcl {

namespace {
constexpr double kPi = std::numbers::pi;

// psi_hat = -omega_hat / (pi^2 |m|^2), zero mode dropped
std::vector<cplx> stream_hat(const ScalarField2D& omega) {
    const Grid2D& g = omega.grid();
    auto c = omega.coefficients();
    std::vector<cplx> psi(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const double m1 = g.mode(i1);
        const cplx* src = c.data() + static_cast<std::size_t>(i1) * g.n();
        cplx* dst = psi.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const double m2 = g.mode(i2);
            const double k2 = kPi * kPi * (m1 * m1 + m2 * m2);
            dst[i2] = (k2 > 0) ? -src[i2] / k2 : cplx{};
        }
    }
    return psi;
}
} // namespace

VectorField2D biot_savart_2d(const ScalarField2D& omega) {
    const double m0 = std::abs(omega.mean());
    if (m0 > 1e-12 * std::max(omega.max_abs(), 1e-300))
        throw NonZeroMean("biot_savart_2d: omega has nonzero mean");
    const Grid2D& g = omega.grid();
    std::vector<cplx> psi = stream_hat(omega);
    std::vector<cplx> u1(g.size()), u2(g.size());
    const int nyq = -g.n() / 2;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const int m1 = g.mode(i1);
        const std::size_t off = static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const int m2 = g.mode(i2);
            const cplx p = psi[off + i2];
            u1[off + i2] = (m2 == nyq) ? cplx{} : -cplx(0.0, kPi * m2) * p;
            u2[off + i2] = (m1 == nyq) ? cplx{} : cplx(0.0, kPi * m1) * p;
        }
    }
    return {ScalarField2D::from_coefficients(g, std::move(u1)),
            ScalarField2D::from_coefficients(g, std::move(u2))};
}

VectorField2D curl_2p5d(const ScalarField2D& rho) {
    return {rho.dy(), -1.0 * rho.dx()};
}

ScalarField2D curl(const VectorField2D& u) {
    return u.y.dx() - u.x.dy();
}

ScalarField2D divergence(const VectorField2D& u) {
    return u.x.dx() + u.y.dy();
}

double energy(const VectorField2D& u) {
    return 0.5 * (u.x.l2_sq() + u.y.l2_sq());
}

double enstrophy(const ScalarField2D& omega) {
    return omega.l2_sq();
}

double grad_l2_sq(const ScalarField2D& f) {
    const Grid2D& g = f.grid();
    auto c = f.coefficients();
    double s = 0;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const double m1 = g.mode(i1);
        const cplx* row = c.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const double m2 = g.mode(i2);
            s += kPi * kPi * (m1 * m1 + m2 * m2) * std::norm(row[i2]);
        }
    }
    return 4.0 * s;
}

namespace {

Vec2 reduce_mod(const Grid2D& g, Vec2 p) {
    const double L = g.period();
    p.x -= L * std::floor((p.x + 1.0) / L);
    p.y -= L * std::floor((p.y + 1.0) / L);
    return p;
}

double direct_sum(const ScalarField2D& f, Vec2 p, std::vector<cplx>& e2) {
    const Grid2D& g = f.grid();
    const int n = g.n();
    auto c = f.coefficients();
    e2.resize(n);
    for (int i2 = 0; i2 < n; ++i2) {
        const double a = kPi * g.mode(i2) * p.y;
        e2[i2] = {std::cos(a), std::sin(a)};
    }
    cplx acc = 0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double a = kPi * g.mode(i1) * p.x;
        const cplx w1{std::cos(a), std::sin(a)};
        const cplx* row = c.data() + static_cast<std::size_t>(i1) * n;
        cplx rowsum = 0;
        for (int i2 = 0; i2 < n; ++i2) rowsum += row[i2] * e2[i2];
        acc += w1 * rowsum;
    }
    return acc.real();
}

// 4x4 tensor Lagrange interpolation on the periodic grid
double local_poly(const ScalarField2D& f, Vec2 p) {
    const Grid2D& g = f.grid();
    const int n = g.n();
    const double h = g.spacing();
    auto v = f.values();
    const double s1 = (p.x + 1.0) / h;
    const double s2 = (p.y + 1.0) / h;
    const int j1 = static_cast<int>(std::floor(s1));
    const int j2 = static_cast<int>(std::floor(s2));
    const double t1 = s1 - j1;
    const double t2 = s2 - j2;
    auto weights = [](double t, double w[4]) {
        w[0] = -t * (t - 1) * (t - 2) / 6.0;
        w[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
        w[2] = -(t + 1) * t * (t - 2) / 2.0;
        w[3] = (t + 1) * t * (t - 1) / 6.0;
    };
    double w1[4], w2[4];
    weights(t1, w1);
    weights(t2, w2);
    double acc = 0;
    for (int a = 0; a < 4; ++a) {
        const int i1 = g.wrap(j1 - 1 + a);
        const double* row = v.data() + static_cast<std::size_t>(i1) * n;
        double rs = 0;
        for (int b = 0; b < 4; ++b) rs += w2[b] * row[g.wrap(j2 - 1 + b)];
        acc += w1[a] * rs;
    }
    return acc;
}

} // namespace

std::vector<double> interpolate(const ScalarField2D& f, std::span<const Vec2> pts) {
    std::vector<double> out(pts.size());
    if (pts.size() <= kInterpolateDirectLimit) {
        std::vector<cplx> e2;
        for (std::size_t i = 0; i < pts.size(); ++i)
            out[i] = direct_sum(f, reduce_mod(f.grid(), pts[i]), e2);
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i)
            out[i] = local_poly(f, reduce_mod(f.grid(), pts[i]));
    }
    return out;
}

std::vector<Vec2> interpolate(const VectorField2D& u, std::span<const Vec2> pts) {
    auto vx = interpolate(u.x, pts);
    auto vy = interpolate(u.y, pts);
    std::vector<Vec2> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = {vx[i], vy[i]};
    return out;
}

VelGrad velocity_gradient_at(const ScalarField2D& omega, Vec2 p) {
    const Grid2D& g = omega.grid();
    const int n = g.n();
    const int cut = g.dealias_cut();
    p = reduce_mod(g, p);
    auto c = omega.coefficients();

    std::vector<cplx> e2(2 * cut + 1);
    for (int m2 = -cut; m2 <= cut; ++m2) {
        const double a = kPi * m2 * p.y;
        e2[m2 + cut] = {std::cos(a), std::sin(a)};
    }

    cplx su1 = 0, su2 = 0, s11 = 0, s21 = 0, s12 = 0, som = 0;
    for (int m1 = -cut; m1 <= cut; ++m1) {
        const double a = kPi * m1 * p.x;
        const cplx w1{std::cos(a), std::sin(a)};
        const cplx* row = c.data() + static_cast<std::size_t>(g.index_of_mode(m1)) * n;
        cplx ru1 = 0, ru2 = 0, r11 = 0, r21 = 0, r12 = 0, rom = 0;
        for (int m2 = -cut; m2 <= cut; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            const cplx w = row[g.index_of_mode(m2)] * e2[m2 + cut];
            const double k2 = kPi * kPi * (double(m1) * m1 + double(m2) * m2);
            const cplx psi = -w / k2;
            const cplx iu1 = -cplx(0, kPi * m2) * psi;  // u1 = -d2 psi
            const cplx iu2 = cplx(0, kPi * m1) * psi;   // u2 =  d1 psi
            ru1 += iu1;
            ru2 += iu2;
            r11 += cplx(0, kPi * m1) * iu1;
            r21 += cplx(0, kPi * m2) * iu1;
            r12 += cplx(0, kPi * m1) * iu2;
            rom += w;
        }
        su1 += w1 * ru1;
        su2 += w1 * ru2;
        s11 += w1 * r11;
        s21 += w1 * r21;
        s12 += w1 * r12;
        som += w1 * rom;
    }
    VelGrad out;
    out.u = {su1.real(), su2.real()};
    out.d1u1 = s11.real();
    out.d2u1 = s21.real();
    out.d1u2 = s12.real();
    out.omega = som.real();
    return out;
}

} // namespace vcl
