#include "vcl/cascade_mc.hpp"

#include "vcl/initial_data.hpp"
#include "vcl/ops.hpp"

#include <map>
#include <mutex>
#include <cmath>
#include <numbers>
#include <random>

namespace vcl::mc {

namespace {
constexpr double kPi = std::numbers::pi;

double pt_norm(const LatticePt& p) {
    return std::sqrt(double(p[0]) * p[0] + double(p[1]) * p[1] + double(p[2]) * p[2]);
}
} // namespace

LatticeField::LatticeField(int d, int R, double scale)
    : d_(d), R_(R), scale_(scale), side_(2 * R + 1) {
    const std::size_t pts = d == 2 ? static_cast<std::size_t>(side_) * side_
                                   : static_cast<std::size_t>(side_) * side_ * side_;
    data_.assign(pts * d_, cplx{});
}

bool LatticeField::inside(const LatticePt& p) const {
    if (std::abs(p[0]) > R_ || std::abs(p[1]) > R_) return false;
    return d_ == 2 ? p[2] == 0 : std::abs(p[2]) <= R_;
}

std::size_t LatticeField::idx(const LatticePt& p) const {
    const std::size_t a = static_cast<std::size_t>(p[0] + R_);
    const std::size_t b = static_cast<std::size_t>(p[1] + R_);
    if (d_ == 2) return (a * side_ + b) * 2;
    const std::size_t c = static_cast<std::size_t>(p[2] + R_);
    return ((a * side_ + b) * side_ + c) * 3;
}

cplx* LatticeField::at(const LatticePt& p) { return data_.data() + idx(p); }
const cplx* LatticeField::at(const LatticePt& p) const { return data_.data() + idx(p); }

double LatticeField::energy() const {
    double s = 0;
    for (const cplx& z : data_) s += std::norm(z);
    return s;
}

void LatticeField::for_each(const std::function<void(const LatticePt&, const cplx*)>& f) const {
    const int zlo = d_ == 2 ? 0 : -R_, zhi = d_ == 2 ? 0 : R_;
    for (int i = -R_; i <= R_; ++i)
        for (int j = -R_; j <= R_; ++j)
            for (int k = zlo; k <= zhi; ++k) {
                const LatticePt p{i, j, k};
                f(p, at(p));
            }
}

void LatticeField::for_each_mut(const std::function<void(const LatticePt&, cplx*)>& f) {
    const int zlo = d_ == 2 ? 0 : -R_, zhi = d_ == 2 ? 0 : R_;
    for (int i = -R_; i <= R_; ++i)
        for (int j = -R_; j <= R_; ++j)
            for (int k = zlo; k <= zhi; ++k) {
                const LatticePt p{i, j, k};
                f(p, at(p));
            }
}

Rotation Rotation::identity(int) {
    Rotation r;
    r.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    r.lattice_exact = true;
    return r;
}

Rotation Rotation::quarter_turn(int d, int quarters) {
    (void)d;
    const int q = ((quarters % 4) + 4) % 4;
    const double c[4] = {1, 0, -1, 0};
    const double s[4] = {0, 1, 0, -1};
    Rotation r;
    r.m = {{{c[q], -s[q], 0}, {s[q], c[q], 0}, {0, 0, 1}}};
    r.lattice_exact = true;
    return r;
}

Rotation Rotation::about_e3(int d, double theta) {
    (void)d;
    Rotation r;
    r.m = {{{std::cos(theta), -std::sin(theta), 0},
            {std::sin(theta), std::cos(theta), 0},
            {0, 0, 1}}};
    r.lattice_exact = false;
    return r;
}

Rotation Rotation::octahedral(int index) {
    // the 24 rotations of the cube: signed permutation matrices with det +1
    static const std::vector<std::array<std::array<double, 3>, 3>> elems = [] {
        std::vector<std::array<std::array<double, 3>, 3>> out;
        int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perm)
            for (int s0 = -1; s0 <= 1; s0 += 2)
                for (int s1 = -1; s1 <= 1; s1 += 2)
                    for (int s2 = -1; s2 <= 1; s2 += 2) {
                        std::array<std::array<double, 3>, 3> m{};
                        const int sg[3] = {s0, s1, s2};
                        for (int r = 0; r < 3; ++r) m[r][p[r]] = sg[r];
                        const double det =
                            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                        if (det > 0.5) out.push_back(m);
                    }
        return out;
    }();
    Rotation r;
    r.m = elems[static_cast<std::size_t>(index) % elems.size()];
    r.lattice_exact = true;
    return r;
}

Rotation Rotation::compose(const Rotation& o) const {
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    r.lattice_exact = lattice_exact && o.lattice_exact;
    return r;
}

LatticeField rotate_hat(const LatticeField& u, const Rotation& r) {
    LatticeField out(u.d(), u.R(), u.scale());
    const int d = u.d();
    out.for_each_mut([&](const LatticePt& p, cplx* v) {
        // source = R^{-1} p = R^T p
        double src[3] = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) src[i] += r.m[j][i] * p[j];
        const LatticePt q{static_cast<int>(std::lround(src[0])), static_cast<int>(std::lround(src[1])),
                          d == 2 ? 0 : static_cast<int>(std::lround(src[2]))};
        if (!u.inside(q)) return;
        const cplx* w = u.at(q);
        for (int i = 0; i < d; ++i) {
            cplx s = 0;
            for (int j = 0; j < d; ++j) s += r.m[i][j] * w[j];
            v[i] = s;
        }
    });
    if (!r.lattice_exact) {
        const double e0 = u.energy(), e1 = out.energy();
        if (e1 > 0) {
            const double f = std::sqrt(e0 / e1);
            out.for_each_mut([&](const LatticePt&, cplx* v) {
                for (int i = 0; i < u.d(); ++i) v[i] *= f;
            });
        }
    }
    return out;
}

namespace {

void leray_project(LatticeField& f) {
    f.for_each_mut([&](const LatticePt& p, cplx* v) {
        const double n2 = double(p[0]) * p[0] + double(p[1]) * p[1] + double(p[2]) * p[2];
        if (n2 == 0) return;
        cplx dot = 0;
        for (int i = 0; i < f.d(); ++i) dot += double(p[i]) * v[i];
        for (int i = 0; i < f.d(); ++i) v[i] -= double(p[i]) * dot / n2;
    });
}

void band_limit(LatticeField& f, const ShellSpec& shell) {
    f.for_each_mut([&](const LatticePt& p, cplx* v) {
        if (!shell.in_union(pt_norm(p)))
            for (int i = 0; i < f.d(); ++i) v[i] = 0;
    });
}

// projector onto the -1 eigenspace of A = R_{pi/2} o (.):  (I - A + A^2 - A^3)/4
LatticeField antisym_project(const LatticeField& f) {
    const Rotation q = Rotation::quarter_turn(f.d(), 1);
    LatticeField a1 = rotate_hat(f, q);
    LatticeField a2 = rotate_hat(a1, q);
    LatticeField a3 = rotate_hat(a2, q);
    LatticeField out(f.d(), f.R(), f.scale());
    out.for_each_mut([&](const LatticePt& p, cplx* v) {
        const cplx* f0 = f.at(p);
        const cplx* f1 = a1.at(p);
        const cplx* f2 = a2.at(p);
        const cplx* f3 = a3.at(p);
        for (int i = 0; i < f.d(); ++i) v[i] = 0.25 * (f0[i] - f1[i] + f2[i] - f3[i]);
    });
    return out;
}

} // namespace

SnapshotU build_snapshot(int d, int b, const SnapshotOptions& opt) {
    if (d != 2 && d != 3) throw ConfigError("build_snapshot: d must be 2 or 3");
    if (b < 2 || b > 8) throw ConfigError("build_snapshot: b must be in [2,8]");
    const int R = 2 * b;
    LatticeField U(d, R, 1.0);

    // seed: single-bubble velocity coefficients at lattice modes (d=3: in the
    // xi_3 = 0 plane with the vertical profile as third component)
    const Grid2D g(64);
    const ScalarField2D om = init::single_bubble(g, 0.125);
    const VectorField2D u = biot_savart_2d(om);
    const ScalarField2D u3 = init::small_scale_profile(g, 4, init::LinearThm2{});
    auto c1 = u.x.coefficients();
    auto c2 = u.y.coefficients();
    auto c3 = u3.coefficients();
    U.for_each_mut([&](const LatticePt& p, cplx* v) {
        if (d == 3 && p[2] != 0) return;
        const std::size_t off =
            static_cast<std::size_t>(g.index_of_mode(p[0])) * g.n() + g.index_of_mode(p[1]);
        v[0] = c1[off];
        v[1] = c2[off];
        if (d == 3) v[2] = c3[off];
    });

    if (opt.seed_shift != 0) {
        // add a shifted copy; breaks the pi/2 antisymmetry while keeping the
        // field real and divergence-free
        std::mt19937_64 rng(opt.seed_shift);
        std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
        const double y1 = uni(rng), y2 = uni(rng), y3 = d == 3 ? uni(rng) : 0.0;
        U.for_each_mut([&](const LatticePt& p, cplx* v) {
            const cplx ph = std::exp(cplx(0, y1 * p[0] + y2 * p[1] + y3 * p[2]));
            for (int i = 0; i < d; ++i) v[i] *= (1.0 + 0.5 * ph);
        });
    }

    const ShellSpec unit{b, 1.0, d};
    band_limit(U, unit);
    leray_project(U);
    if (opt.antisymmetrize) U = antisym_project(U);

    SnapshotU snap{std::move(U), b, d, 0, 0, opt.antisymmetrize};
    snap.e_u = shell_energy(snap.u_hat, unit); // k = 1: plain masked sum
    if (snap.e_u < 1e-8) throw DegenerateSnapshot("build_snapshot: no energy on the shells");
    snap.pi_u = three_wave(snap.u_hat, snap.u_hat, snap.u_hat, unit);
    if (!opt.antisymmetrize && snap.pi_u < 0) {
        // trilinear oddness: flipping the sign flips the flux
        snap.u_hat.for_each_mut([&](const LatticePt&, cplx* v) {
            for (int i = 0; i < d; ++i) v[i] = -v[i];
        });
        snap.pi_u = -snap.pi_u;
    }
    return snap;
}

namespace {
struct ShellPoints {
    std::vector<LatticePt> large, small;
};

ShellPoints& unit_shell_points(int d, int b) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, ShellPoints> cache;
    std::lock_guard lock(mu);
    auto& sp = cache[{d, b}];
    if (sp.large.empty() && sp.small.empty()) {
        const ShellSpec unit{b, 1.0, d};
        const int R = 2 * b;
        const int zlo = d == 2 ? 0 : -R, zhi = d == 2 ? 0 : R;
        for (int i = -R; i <= R; ++i)
            for (int j = -R; j <= R; ++j)
                for (int k = zlo; k <= zhi; ++k) {
                    const LatticePt p{i, j, k};
                    const double r = pt_norm(p);
                    if (unit.in_large(r)) sp.large.push_back(p);
                    if (unit.in_small(r)) sp.small.push_back(p);
                }
    }
    return sp;
}
} // namespace

double three_wave(const LatticeField& u, const LatticeField& v, const LatticeField& w,
                  const ShellSpec& shell, double* imag_residual) {
    // fields are stored on the unit lattice (h_k of the scale-k field), so all
    // masks reduce to the unit shells; the k powers restore physical units
    const int d = u.d();
    const ShellPoints& sp = unit_shell_points(d, shell.b);
    const ShellSpec unit{shell.b, 1.0, shell.d};
    const double k = shell.k;
    cplx acc = 0;
    for (const LatticePt& xi : sp.large) {
        const LatticePt mxi{-xi[0], -xi[1], -xi[2]};
        const cplx* wv = w.at(mxi);
        for (const LatticePt& eta : sp.small) {
            const LatticePt dd{xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]};
            if (!u.inside(dd)) continue;
            if (!unit.in_small(pt_norm(dd))) continue;
            const cplx* uv = u.at(dd);
            const cplx* vv = v.at(eta);
            cplx xiu = 0, vw = 0;
            for (int i = 0; i < d; ++i) {
                xiu += double(xi[i]) * uv[i];
                vw += vv[i] * wv[i];
            }
            acc += cplx(0, 1) * (k * xiu) * vw;
        }
    }
    // physical measure: (k^d)^2 from the two integrals
    acc *= std::pow(k, 2 * d);
    if (imag_residual) *imag_residual = std::abs(acc.imag()) / (std::abs(acc.real()) + 1e-300);
    return acc.real();
}

double shell_energy(const LatticeField& u, const ShellSpec& shell) {
    const ShellPoints& sp = unit_shell_points(u.d(), shell.b);
    const ShellSpec unit{shell.b, 1.0, shell.d};
    double s = 0;
    for (const LatticePt& p : sp.large) {
        const cplx* v = u.at(p);
        for (int i = 0; i < u.d(); ++i) s += std::norm(v[i]);
    }
    // the shells can overlap (|xi| = 2 for b = 2); count the union once
    for (const LatticePt& p : sp.small) {
        if (unit.in_large(pt_norm(p))) continue;
        const cplx* v = u.at(p);
        for (int i = 0; i < u.d(); ++i) s += std::norm(v[i]);
    }
    return std::pow(shell.k, u.d() - 1) * s;
}

double alpha_solve(int d) {
    if (d != 2 && d != 3) throw ConfigError("alpha_solve: d must be 2 or 3");
    const double alpha = -(1.0 + 3.0 * d) / 3.0;
    const double spectrum_exp = -1.0 + 2.0 * d + 2.0 * alpha;
    const double flux_exp = 3.0 * d + 1.0 + 3.0 * alpha;
    if (std::abs(spectrum_exp + 5.0 / 3.0) > 1e-12 || std::abs(flux_exp) > 1e-12)
        throw Error("alpha_solve: exponent identity failed");
    return alpha;
}

EnsembleSample draw_sample(int d, int b, int n, double k, std::mt19937_64& rng, RotationMode mode) {
    EnsembleSample s;
    s.n = n;
    const std::size_t count = static_cast<std::size_t>(std::llround(std::pow(double(b), n * d)));
    s.rot.reserve(count);
    s.y.reserve(count);
    std::uniform_int_distribution<int> quarters(0, 3);
    std::uniform_int_distribution<int> octa(0, 23);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> shift(0.0, 2.0 * kPi * k);
    for (std::size_t j = 0; j < count; ++j) {
        Rotation q = d == 2 ? Rotation::quarter_turn(d, quarters(rng)) : Rotation::octahedral(octa(rng));
        Rotation r = mode == RotationMode::LatticeExact ? Rotation::quarter_turn(d, quarters(rng))
                                                        : Rotation::about_e3(d, angle(rng));
        s.rot.push_back(q.compose(r));
        std::array<double, 3> yy{shift(rng), shift(rng), d == 3 ? shift(rng) : 0.0};
        s.y.push_back(yy);
    }
    return s;
}

LatticeField synthesize(const SnapshotU& snap, const EnsembleSample& sample, double k,
                        double alpha) {
    const int d = snap.d;
    const double expect = std::pow(double(snap.b), sample.n);
    if (std::abs(k - expect) > 1e-9 * expect)
        throw ShellMismatch("synthesize: k inconsistent with sample depth");
    LatticeField out(d, snap.u_hat.R(), k);
    const double ka = std::pow(k, alpha);
    for (std::size_t j = 0; j < sample.rot.size(); ++j) {
        const LatticeField rj = rotate_hat(snap.u_hat, sample.rot[j]);
        const auto& y = sample.y[j];
        out.for_each_mut([&](const LatticePt& p, cplx* v) {
            const cplx* w = rj.at(p);
            bool nonzero = false;
            for (int i = 0; i < d; ++i) nonzero = nonzero || w[i] != cplx{};
            if (!nonzero) return;
            const double ph = (y[0] * p[0] + y[1] * p[1] + y[2] * p[2]) / k;
            const cplx e = std::exp(cplx(0, ph)) * ka;
            for (int i = 0; i < d; ++i) v[i] += e * w[i];
        });
    }
    return out;
}

namespace {
uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace

McResult monte_carlo(const SnapshotU& snap, int n_shells, int samples, uint64_t seed,
                     RotationMode mode) {
    if (samples < 1) throw ConfigError("monte_carlo: need samples >= 1");
    McResult res;
    res.alpha = alpha_solve(snap.d);
    res.samples = samples;
    for (int n = 1; n <= n_shells; ++n) {
        const double k = std::pow(double(snap.b), n);
        const ShellSpec shell{snap.b, k, snap.d};
        double me = 0, m2e = 0, mp = 0, m2p = 0;
        for (int ell = 0; ell < samples; ++ell) {
            std::mt19937_64 rng(splitmix64(seed ^ splitmix64(uint64_t(n) << 32 | uint64_t(ell))));
            const EnsembleSample th = draw_sample(snap.d, snap.b, n, k, rng, mode);
            const LatticeField u = synthesize(snap, th, k, res.alpha);
            const double e = shell_energy(u, shell);
            const double p = three_wave(u, u, u, shell);
            const double de = e - me;
            me += de / (ell + 1);
            m2e += de * (e - me);
            const double dp = p - mp;
            mp += dp / (ell + 1);
            m2p += dp * (p - mp);
        }
        ShellStats st;
        st.k = k;
        st.mean_e = me;
        st.stderr_e = samples > 1 ? std::sqrt(m2e / (samples - 1) / samples) : 0.0;
        st.mean_pi = mp;
        st.stderr_pi = samples > 1 ? std::sqrt(m2p / (samples - 1) / samples) : 0.0;
        res.shells.push_back(st);
    }
    // least-squares slope of log mean_e vs log k
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const ShellStats& s : res.shells) {
        if (s.mean_e <= 0) continue;
        const double x = std::log(s.k), y = std::log(s.mean_e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    res.slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    return res;
}

} // namespace vcl::mc
