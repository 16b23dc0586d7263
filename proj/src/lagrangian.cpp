#include "vcl/lagrangian.hpp"

#include "vcl/errors.hpp"
#include "vcl/initial_data.hpp"

#include <cmath>
#include <numbers>

namespace vcl {

namespace {
constexpr double kPi = std::numbers::pi;

Mat2 grad_times(const VelGrad& v, const Mat2& D) {
    // dD/dt = (grad u) D, (grad u)_{ik} = d_k u_i
    const double g11 = v.d1u1, g12 = v.d2u1, g21 = v.d1u2, g22 = v.d2u2();
    return {g11 * D.a11 + g12 * D.a21, g11 * D.a12 + g12 * D.a22,
            g21 * D.a11 + g22 * D.a21, g21 * D.a12 + g22 * D.a22};
}

void rk4_marker(const VelocitySampler& s1, const VelocitySampler& s2, const VelocitySampler& s3,
                const VelocitySampler& s4, FlowMarker& m, double t, double dt, bool check_det) {
    const VelGrad v1 = s1.at(m.eta, t);
    const Vec2 e2 = m.eta + v1.u * (dt / 2);
    const Mat2 d2 = m.D + grad_times(v1, m.D) * (dt / 2);

    const VelGrad v2 = s2.at(e2, t + dt / 2);
    const Vec2 e3 = m.eta + v2.u * (dt / 2);
    const Mat2 d3 = m.D + grad_times(v2, d2) * (dt / 2);

    const VelGrad v3 = s3.at(e3, t + dt / 2);
    const Vec2 e4 = m.eta + v3.u * dt;
    const Mat2 d4 = m.D + grad_times(v3, d3) * dt;

    const VelGrad v4 = s4.at(e4, t + dt);

    m.eta = m.eta + (v1.u + v2.u * 2.0 + v3.u * 2.0 + v4.u) * (dt / 6);
    m.D = m.D + (grad_times(v1, m.D) + grad_times(v2, d2) * 2.0 + grad_times(v3, d3) * 2.0 +
                 grad_times(v4, d4)) *
                    (dt / 6);
    if (check_det && std::abs(m.D.det() - 1.0) > 1e-2)
        throw DeterminantDrift("marker deformation determinant drifted past 1e-2");
}

} // namespace

MarkerSet seed_markers_ball(Vec2 center, double radius, int count) {
    MarkerSet out;
    out.push_back(FlowMarker::at(center));
    const int rings = count <= 5 ? 1 : 2;
    int left = count - 1;
    for (int q = 1; q <= rings && left > 0; ++q) {
        const double r = radius * q / rings;
        const int pts = (q == rings) ? left : left / 2;
        for (int i = 0; i < pts; ++i) {
            const double th = 2 * kPi * i / pts;
            out.push_back(FlowMarker::at({center.x + r * std::cos(th), center.y + r * std::sin(th)}));
        }
        left -= pts;
    }
    return out;
}

MarkerSet seed_markers_fan(double r_min, double r_max, int count, double theta) {
    MarkerSet out;
    for (int i = 0; i < count; ++i) {
        const double r = r_min * std::pow(r_max / r_min, count == 1 ? 0.0 : double(i) / (count - 1));
        out.push_back(FlowMarker::at({r * std::cos(theta), r * std::sin(theta)}));
    }
    return out;
}

void advect_markers_stages(const VelocitySampler& s1, const VelocitySampler& s2,
                           const VelocitySampler& s3, const VelocitySampler& s4, MarkerSet& markers,
                           double t, double dt, bool check_det) {
    for (FlowMarker& m : markers) rk4_marker(s1, s2, s3, s4, m, t, dt, check_det);
}

void advect_markers(const VelocitySampler& v, MarkerSet& markers, double t0, double t1, double dt,
                    bool check_det) {
    if (t1 <= t0) return;
    const int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt)));
    const double h = (t1 - t0) / steps;
    double t = t0;
    for (int s = 0; s < steps; ++s, t += h) advect_markers_stages(v, v, v, v, markers, t, h, check_det);
}

double key_integral(const ScalarField2D& omega, double r, int n_theta, int n_r) {
    const int N = omega.grid().n();
    if (n_theta <= 0) n_theta = 4 * N;
    if (n_r <= 0) n_r = 2 * N;
    const double s_lo = 2.0 * r, s_hi = 1.0;
    if (s_lo >= s_hi) return 0.0;
    const double ds = (s_hi - s_lo) / n_r;
    const double dth = (kPi / 2) / n_theta;
    // force the local-polynomial path: these node counts dwarf the direct limit
    omega.values();
    double acc = 0;
    std::vector<Vec2> row(n_r);
    for (int i = 0; i < n_theta; ++i) {
        const double th = (i + 0.5) * dth;
        const double c = std::cos(th), s = std::sin(th);
        for (int j = 0; j < n_r; ++j) {
            const double rad = s_lo + (j + 0.5) * ds;
            row[j] = {rad * c, rad * s};
        }
        const std::vector<double> w = interpolate(omega, row);
        const double f = std::sin(2 * th);
        double rowacc = 0;
        for (int j = 0; j < n_r; ++j) rowacc += w[j] / (s_lo + (j + 0.5) * ds);
        acc += f * rowacc;
    }
    return (4.0 / kPi) * acc * ds * dth;
}

StrainAtOrigin strain_at_origin(const ScalarField2D& omega) {
    const Grid2D& g = omega.grid();
    auto c = omega.coefficients();
    const int nyq = -g.n() / 2;
    double d11 = 0, d21 = 0, d12 = 0;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const int m1 = g.mode(i1);
        if (m1 == nyq) continue;
        const cplx* row = c.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const int m2 = g.mode(i2);
            if (m2 == nyq || (m1 == 0 && m2 == 0)) continue;
            const double k2 = double(m1) * m1 + double(m2) * m2;
            const double re = row[i2].real();
            d11 += -(double(m1) * m2 / k2) * re;
            d21 += -(double(m2) * m2 / k2) * re;
            d12 += (double(m1) * m1 / k2) * re;
        }
    }
    return {d11, d21, d12};
}

PolarRates polar_rates(const FlowMarker& m, const VelocitySampler& v, const ScalarField2D& omega,
                       double t) {
    const double r = m.eta.norm();
    if (r <= 4.0 * omega.grid().spacing())
        throw TooCloseToOrigin("polar_rates: |eta| under 4 grid spacings");
    const double th = std::atan2(m.eta.y, m.eta.x);
    const VelGrad vg = v.at(m.eta, t);
    PolarRates out;
    out.key_I = key_integral(omega, r, omega.grid().n(), omega.grid().n() / 2);
    const Vec2 er{std::cos(th), std::sin(th)};
    const Vec2 eth{-std::sin(th), std::cos(th)};
    out.radial_direct = vg.u.dot(er);
    out.angular_direct = vg.u.dot(eth) / r;
    out.radial_split = r * std::cos(2 * th) * out.key_I;
    out.angular_split = -std::sin(2 * th) * out.key_I;
    out.b_radial = out.radial_direct / r - std::cos(2 * th) * out.key_I;
    out.b_angular = out.angular_direct - out.angular_split;
    return out;
}

namespace {
double torus_dist(Vec2 a, Vec2 b) {
    double d1 = a.x - b.x, d2 = a.y - b.y;
    d1 -= 2.0 * std::round(d1 / 2.0);
    d2 -= 2.0 * std::round(d2 / 2.0);
    return std::hypot(d1, d2);
}
} // namespace

YudovichReport yudovich_check(const MarkerSet& pairs, double t, double omega0_inf) {
    YudovichReport rep;
    for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
        const FlowMarker& a = pairs[i];
        const FlowMarker& b = pairs[i + 1];
        YudovichReport::Pair p;
        p.x = a.x0;
        p.xp = b.x0;
        p.q = torus_dist(a.x0, b.x0);
        p.Q = torus_dist(a.eta, b.eta);
        if (t <= 0 || omega0_inf <= 0 || p.q <= 0 || p.q >= 1 || p.Q <= 0) {
            p.c = 0;
        } else {
            const double rho = std::log(p.Q) / std::log(p.q);
            p.c = std::abs(rho - 1.0) / (t * omega0_inf);
        }
        rep.pairs.push_back(p);
        rep.max_c = std::max(rep.max_c, p.c);
    }
    return rep;
}

MarkerSet seed_bubble_support_markers(int k, int per_side) {
    const init::RectangleLadder L = init::RectangleLadder::standard();
    const init::PolarRect R = L.outer_k(k);
    MarkerSet out;
    auto add = [&](double r, double th) { out.push_back(FlowMarker::at({r * std::cos(th), r * std::sin(th)})); };
    for (int i = 0; i < per_side; ++i) {
        const double fr = double(i) / (per_side - 1);
        add(R.r1 + fr * (R.r2 - R.r1), R.th1);
        add(R.r1 + fr * (R.r2 - R.r1), R.th2);
        add(R.r1, R.th1 + fr * (R.th2 - R.th1));
        add(R.r2, R.th1 + fr * (R.th2 - R.th1));
    }
    return out;
}

BubbleShape bubble_shape_check(const ScalarField2D& omega, int k, double a_k,
                               const MarkerSet& support_markers) {
    const init::RectangleLadder L = init::RectangleLadder::standard();
    const init::PolarRect core = L.inner_third_k(k);
    const Grid2D& g = omega.grid();
    BubbleShape out;

    double mn = std::numeric_limits<double>::infinity();
    auto vals = omega.values();
    const int N = g.n();
    int found = 0;
    for (int i1 = N / 2; i1 < N; ++i1) {
        const double x1 = g.coord(i1);
        if (x1 > core.r2) break;
        for (int i2 = N / 2; i2 < N; ++i2) {
            const double x2 = g.coord(i2);
            if (x2 > core.r2) break;
            const double r = std::hypot(x1, x2);
            const double th = std::atan2(x2, x1);
            if (core.contains(r, th)) {
                mn = std::min(mn, vals[static_cast<std::size_t>(i1) * N + i2]);
                ++found;
            }
        }
    }
    out.core_min = found ? mn : 0.0;
    out.core_ok = found > 0 && mn >= a_k * (1.0 - 1e-3);

    const double rlo = std::pow(2.0, -k - 1), rhi = std::pow(2.0, 1 - k);
    double worst = 0;
    for (const FlowMarker& m : support_markers) {
        const double r = m.eta.norm();
        const double th = std::atan2(m.eta.y, m.eta.x);
        double exc = std::max({0.0, rlo - r, r - rhi});
        if (th < 0) exc = std::max(exc, -th * r);
        if (th > kPi / 2) exc = std::max(exc, (th - kPi / 2) * r);
        worst = std::max(worst, exc);
    }
    out.worst_excursion = worst;
    out.support_ok = worst == 0.0;
    return out;
}

} // namespace vcl
