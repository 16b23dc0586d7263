#include "vcl/initial_data.hpp"

#include "vcl/ops.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vcl::init {

namespace {
constexpr double kPi = std::numbers::pi;

// 32-node Gauss-Legendre on [-1,1]
struct GL32 {
    std::array<double, 32> x{}, w{};
    GL32() {
        // Newton iteration on Legendre P_32
        const int n = 32;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            x[i] = -t;
            x[n - 1 - i] = t;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};
const GL32& gl32() {
    static GL32 q;
    return q;
}
} // namespace

double smoothstep5(double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    return u * u * u * (10 + u * (-15 + 6 * u));
}

double smoothstep5_int(double u) {
    if (u <= 0) return 0;
    double ui = std::min(u, 1.0);
    double v = ui * ui * ui * ui * (2.5 + ui * (-3.0 + ui));
    return v + std::max(u - 1.0, 0.0);
}

double cinf_plateau(double s) {
    if (s <= 0) return 1.0;
    if (s >= 1) return 0.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return b / (a + b);
}

namespace {
// h' ramps 0 -> -1 over [P, P+V] (quintic), holds -1, ramps back over [2-V, 2]
constexpr double kRampV = 0.19;
constexpr double kPlateauP = 1.0 - kRampV;
} // namespace

double bump_h(double r) {
    if (r <= kPlateauP) return 1.0;
    if (r >= 2.0) return 0.0;
    double drop = kRampV * smoothstep5_int(std::min((r - kPlateauP) / kRampV, 1.0));
    if (r > kPlateauP + kRampV) drop += std::min(r - (kPlateauP + kRampV), 2.0 - kRampV - (kPlateauP + kRampV));
    if (r > 2.0 - kRampV) {
        const double b = (r - (2.0 - kRampV)) / kRampV;
        drop += kRampV * (b - smoothstep5_int(b));
    }
    return 1.0 - drop;
}

double bubble_zeta(double x1, double x2) {
    double s = 0;
    for (int e1 = -1; e1 <= 1; e1 += 2)
        for (int e2 = -1; e2 <= 1; e2 += 2)
            s += e1 * e2 * bump_h(std::hypot(x1 - 2.0 * e1, x2 - 2.0 * e2));
    return s;
}

double bl_phi(double r) {
    return cinf_plateau((r - 0.125) / 0.125);
}

double bl_phi0(double x1, double x2) {
    double s = 0;
    for (int e1 = -1; e1 <= 1; e1 += 2)
        for (int e2 = -1; e2 <= 1; e2 += 2)
            s += e1 * e2 * bl_phi(std::hypot(x1 - e1, x2 - e2));
    return s;
}

namespace {
double mollifier_mass_unit() {
    // 2 pi int_0^1 m(r) r dr for the unit-scale profile, once
    static const double mass = [] {
        const GL32& q = gl32();
        double s = 0;
        for (int i = 0; i < 32; ++i) {
            const double r = 0.5 * (q.x[i] + 1.0);
            s += q.w[i] * 0.5 * cinf_plateau((r - 0.5) / 0.5) * r;
        }
        return 2.0 * kPi * s;
    }();
    return mass;
}
} // namespace

double mollifier(double r, double ell) {
    return cinf_plateau((r / ell - 0.5) / 0.5) / (mollifier_mass_unit() * ell * ell);
}

ScalarField2D single_bubble(const Grid2D& g, double ell) {
    if (!(ell <= 1.0) || 4.0 * ell >= 1.0)
        throw ScaleTooLarge("single_bubble: need 4*ell < 1");
    return ScalarField2D::sample(g, [ell](double x1, double x2) {
        if (std::abs(x1) >= 4 * ell || std::abs(x2) >= 4 * ell) return 0.0;
        return bubble_zeta(x1 / ell, x2 / ell);
    });
}

namespace {

// 1-periodic-ish description of s(t) = sgn(t) chi{2^-n < |t| < 1-2^-n} on [-1,1)
struct CutSign {
    double lo, hi; // 2^-n, 1-2^-n
    double operator()(double t) const {
        t -= 2.0 * std::floor((t + 1.0) / 2.0);
        const double a = std::abs(t);
        if (a <= lo || a >= hi) return 0.0;
        return t > 0 ? 1.0 : -1.0;
    }
    // jump locations of s within (c - ell, c + ell), at most one by construction
    bool jump_near(double c, double ell, double* where) const {
        double cand[8] = {lo, hi, -lo, -hi, 2 - lo, 2 - hi, -2 + lo, -2 + hi};
        for (double j : cand) {
            double d = j - (c - 2.0 * std::floor((c + 1.0) / 2.0));
            d -= 2.0 * std::round(d / 2.0);
            if (std::abs(d) < ell) {
                *where = d; // offset from c
                return true;
            }
        }
        return false;
    }
};

} // namespace

ScalarField2D smoothed_bahouri_chemin(const Grid2D& g, int n) {
    const double ell = std::pow(2.0, -n - 1);
    if (ell < 4.0 * g.spacing())
        throw UnderResolved("smoothed_bahouri_chemin: mollifier support under 4 cells");
    const CutSign s{std::pow(2.0, -n), 1.0 - std::pow(2.0, -n)};
    const GL32& q = gl32();
    const int N = g.n();

    // 1D GL nodes over [-ell, ell] split at an interior jump
    auto segments = [&](double c, std::array<double, 2>& cuts) -> int {
        double off;
        if (s.jump_near(c, ell, &off)) {
            cuts = {off, ell};
            return 2;
        }
        cuts = {ell, ell};
        return 1;
    };

    std::vector<double> v(g.size(), 0.0);
    // first quadrant only; the rest by odd reflection
    for (int i1 = N / 2 + 1; i1 < N; ++i1) {
        const double x1 = g.coord(i1);
        for (int i2 = N / 2 + 1; i2 < N; ++i2) {
            const double x2 = g.coord(i2);
            double off;
            const bool near1 = s.jump_near(x1, ell, &off);
            const bool near2 = s.jump_near(x2, ell, &off);
            double val;
            if (!near1 && !near2) {
                val = s(x1) * s(x2);
            } else {
                // piecewise GL of int phi_ell(y) s(x1-y1) s(x2-y2) dy over [-ell,ell]^2
                std::array<double, 2> c1, c2;
                const int n1 = segments(x1, c1);
                const int n2 = segments(x2, c2);
                val = 0;
                double a1 = -ell;
                for (int s1 = 0; s1 < n1; ++s1) {
                    const double b1 = c1[s1];
                    double a2 = -ell;
                    for (int s2 = 0; s2 < n2; ++s2) {
                        const double b2 = c2[s2];
                        double cell = 0;
                        for (int i = 0; i < 32; ++i) {
                            const double y1 = 0.5 * (a1 + b1) + 0.5 * (b1 - a1) * q.x[i];
                            const double f1 = s(x1 - y1);
                            if (f1 == 0.0) continue;
                            double inner = 0;
                            for (int j = 0; j < 32; ++j) {
                                const double y2 = 0.5 * (a2 + b2) + 0.5 * (b2 - a2) * q.x[j];
                                inner += q.w[j] * mollifier(std::hypot(y1, y2), ell) * s(x2 - y2);
                            }
                            cell += q.w[i] * f1 * inner;
                        }
                        val += cell * 0.25 * (b1 - a1) * (b2 - a2);
                        a2 = b2;
                    }
                    a1 = b1;
                }
            }
            v[static_cast<std::size_t>(i1) * N + i2] = val;
        }
    }
    // odd reflections; zero on the symmetry lines x in {0, -1}
    for (int i1 = 0; i1 < N; ++i1) {
        for (int i2 = 0; i2 < N; ++i2) {
            if (i1 > N / 2 && i2 > N / 2) continue;
            const int r1 = (N - i1) % N;
            const int r2 = (N - i2) % N;
            double val = 0;
            if (i1 == 0 || i1 == N / 2 || i2 == 0 || i2 == N / 2)
                val = 0;
            else if (i1 < N / 2 && i2 < N / 2)
                val = v[static_cast<std::size_t>(r1) * N + r2];
            else if (i1 < N / 2)
                val = -v[static_cast<std::size_t>(r1) * N + i2];
            else
                val = -v[static_cast<std::size_t>(i1) * N + r2];
            v[static_cast<std::size_t>(i1) * N + i2] = val;
        }
    }
    return ScalarField2D::from_values(g, std::move(v));
}

std::vector<double> BubbleCoefficients::partial_sums() const {
    std::vector<double> s(a.size() + 1);
    s[0] = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) s[k + 1] = s[k] + a[k];
    return s;
}

BubbleCoefficients BubbleCoefficients::ones(int n) {
    return {std::vector<double>(static_cast<std::size_t>(n), 1.0)};
}

ScalarField2D bourgain_li_bubbles(const Grid2D& g, const BubbleCoefficients& coeffs) {
    const int n = static_cast<int>(coeffs.a.size());
    if (n > std::log2(double(g.n())) - 3 + 1e-9)
        throw UnderResolved("bourgain_li_bubbles: smallest bubble under 8 cells");
    for (double a : coeffs.a)
        if (a < 0 || a > 1) throw ConfigError("bourgain_li_bubbles: need 0 <= a_k <= 1");
    auto a = coeffs.a;
    return ScalarField2D::sample(g, [a, n](double x1, double x2) {
        double s = 0;
        for (int k = 1; k <= n; ++k) {
            const double sc = std::pow(2.0, k);
            // supp phi_0 within 3/4 <= |x|_inf <= 5/4
            if (std::max(std::abs(sc * x1), std::abs(sc * x2)) > 1.3) continue;
            s += a[k - 1] * bl_phi0(sc * x1, sc * x2);
        }
        return s;
    });
}

namespace {
// radial shape: f(r) = r on [0, r0], then a smooth descent to 0 at r_out,
// with |f'| <= 1 and f <= r throughout
double taper_f(double r, double r0, double rout) {
    if (r <= r0) return r;
    if (r >= rout) return 0.0;
    const double st = (r - r0) / (rout - r0);
    // f'(s) = 1 - (1+B) S5(s/a) on [0,a]; -B on [a,b]; -B(1 - S5((s-b)/(1-b))) on [b,1]
    const double A = 0.3, Bseg = 0.7;
    const double B = (A / 2 + 1.0 / 3.0) / (0.5 + Bseg / 2 - A / 2);
    double integ; // of f' ds from 0 to st
    if (st <= A) {
        integ = st - (1 + B) * A * smoothstep5_int(st / A);
    } else if (st <= Bseg) {
        integ = A - (1 + B) * A * 0.5 - B * (st - A);
    } else {
        const double u = (st - Bseg) / (1 - Bseg);
        integ = A - (1 + B) * A * 0.5 - B * (Bseg - A) - B * (1 - Bseg) * (u - smoothstep5_int(u));
    }
    return r0 + (rout - r0) * integ;
}
} // namespace

ScalarField2D small_scale_profile(const Grid2D& g, int n, LinearThm2) {
    const double r0 = std::pow(2.0, -n / 2.0);
    const double rout = 4.0 * r0;
    if (rout < 8.0 * g.spacing())
        throw UnderResolved("small_scale_profile: support under 8 cells");
    return ScalarField2D::sample(g, [r0, rout, n](double x1, double x2) {
        const double r = std::hypot(x1, x2);
        if (r >= rout) return 0.0;
        if (r == 0.0) return 0.0;
        return std::pow(2.0, n / 2.0) * taper_f(r, r0, rout) * x2 / r;
    });
}

ScalarField2D small_scale_profile(const Grid2D& g, const CustomBall& ball) {
    if (ball.radius < 8.0 * g.spacing())
        throw UnderResolved("small_scale_profile: support under 8 cells");
    const double r0 = ball.radius / 4.0;
    auto raw = ScalarField2D::sample(g, [&](double x1, double x2) {
        const double d1 = x1 - ball.center.x, d2 = x2 - ball.center.y;
        const double r = std::hypot(d1, d2);
        if (r >= ball.radius || r == 0.0) return 0.0;
        return taper_f(r, r0, ball.radius) * d2 / r;
    });
    const double gn = std::sqrt(grad_l2_sq(raw));
    if (gn <= 0) throw ConfigError("small_scale_profile: degenerate custom profile");
    return (1.0 / gn) * raw;
}

RectangleLadder RectangleLadder::standard() {
    // phi=1 ball |x-(1,1)| <= 1/8: r in [sqrt2 - 1/8, sqrt2 + 1/8], theta = pi/4 +- asin(1/(8 sqrt2))
    RectangleLadder L;
    L.outer = {1.15, 1.70, 0.60, 0.97};
    L.inner = {1.30, 1.53, 0.70, 0.87};
    L.inner_third = {(2 * L.inner.r1 + L.inner.r2) / 3, (L.inner.r1 + 2 * L.inner.r2) / 3,
                     (2 * L.inner.th1 + L.inner.th2) / 3, (L.inner.th1 + 2 * L.inner.th2) / 3};
    return L;
}

bool RectangleLadder::in_annulus(int k, double r, double th) {
    return std::pow(2.0, -k - 1) < r && r < std::pow(2.0, 1 - k) && 0 < th && th < kPi / 2;
}

} // namespace vcl::init
