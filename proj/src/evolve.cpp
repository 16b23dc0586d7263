#include "vcl/evolve.hpp"

#include "vcl/errors.hpp"
#include "vcl/fft.hpp"

#include <cmath>
#include <numbers>

namespace vcl {

namespace {
constexpr double kPi = std::numbers::pi;
using CVec = std::vector<cplx>;

struct Workspace {
    Grid2D g;
    std::vector<double> u1, u2, wx, wy, sx, sy, prod;
    CVec tmp;
    explicit Workspace(const Grid2D& gg) : g(gg) {
        const std::size_t n = g.size();
        u1.resize(n);
        u2.resize(n);
        wx.resize(n);
        wy.resize(n);
        sx.resize(n);
        sy.resize(n);
        prod.resize(n);
        tmp.resize(n);
    }
};

struct Tendencies {
    CVec dw, ds;
    double umax = 0;
};

// dealiased advective tendencies for (omega^L, u^S) under u = BS(omega^L)
Tendencies advective_rhs(Workspace& w, const CVec& what, const CVec& shat) {
    const Grid2D& g = w.g;
    const int n = g.n();
    const int cut = g.dealias_cut();
    const int nyq = -n / 2;

    CVec& tmp = w.tmp;
    auto band_multiplier = [&](const CVec& src, auto&& f, std::vector<double>& out) {
        for (int i1 = 0; i1 < n; ++i1) {
            const int m1 = g.mode(i1);
            const bool ok1 = std::abs(m1) <= cut && m1 != nyq;
            const cplx* s = src.data() + static_cast<std::size_t>(i1) * n;
            cplx* d = tmp.data() + static_cast<std::size_t>(i1) * n;
            for (int i2 = 0; i2 < n; ++i2) {
                const int m2 = g.mode(i2);
                d[i2] = (ok1 && std::abs(m2) <= cut && m2 != nyq) ? s[i2] * f(m1, m2) : cplx{};
            }
        }
        fft::inverse(g, tmp.data(), out.data());
    };

    band_multiplier(what, [](int m1, int m2) {
        const double k2 = kPi * kPi * (double(m1) * m1 + double(m2) * m2);
        return k2 > 0 ? -cplx(0, kPi * m2) * (-1.0 / k2) : cplx{};
    }, w.u1);
    band_multiplier(what, [](int m1, int m2) {
        const double k2 = kPi * kPi * (double(m1) * m1 + double(m2) * m2);
        return k2 > 0 ? cplx(0, kPi * m1) * (-1.0 / k2) : cplx{};
    }, w.u2);
    band_multiplier(what, [](int m1, int) { return cplx(0, kPi * m1); }, w.wx);
    band_multiplier(what, [](int, int m2) { return cplx(0, kPi * m2); }, w.wy);
    band_multiplier(shat, [](int m1, int) { return cplx(0, kPi * m1); }, w.sx);
    band_multiplier(shat, [](int, int m2) { return cplx(0, kPi * m2); }, w.sy);

    double umax = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        umax = std::max(umax, std::max(std::abs(w.u1[i]), std::abs(w.u2[i])));

    Tendencies t;
    t.umax = umax;
    t.dw.resize(g.size());
    t.ds.resize(g.size());

    auto truncate_band = [&](CVec& v) {
        for (int i1 = 0; i1 < n; ++i1) {
            const bool ok1 = std::abs(g.mode(i1)) <= cut;
            cplx* d = v.data() + static_cast<std::size_t>(i1) * n;
            for (int i2 = 0; i2 < n; ++i2)
                if (!ok1 || std::abs(g.mode(i2)) > cut) d[i2] = cplx{};
        }
    };

    for (std::size_t i = 0; i < g.size(); ++i) w.prod[i] = -(w.u1[i] * w.wx[i] + w.u2[i] * w.wy[i]);
    fft::forward(g, w.prod.data(), t.dw.data());
    truncate_band(t.dw);

    for (std::size_t i = 0; i < g.size(); ++i) w.prod[i] = -(w.u1[i] * w.sx[i] + w.u2[i] * w.sy[i]);
    fft::forward(g, w.prod.data(), t.ds.data());
    truncate_band(t.ds);
    return t;
}

// half-step integrating factor exp(-nu pi^2 |m|^2 dt/2)
std::vector<double> half_factor(const Grid2D& g, double nu, double dt) {
    std::vector<double> e(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const double m1 = g.mode(i1);
        double* row = e.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const double m2 = g.mode(i2);
            row[i2] = std::exp(-nu * kPi * kPi * (m1 * m1 + m2 * m2) * dt / 2);
        }
    }
    return e;
}

struct StepResult {
    CVec wnew, snew;
    CVec stage_w[4]; // omega hat at each RK stage, for marker sampling
};

StepResult if_rk4(Workspace& w, const CVec& w0, const CVec& s0, double nu, double dt,
                  bool keep_stages) {
    const Grid2D& g = w.g;
    const std::size_t n = g.size();
    const bool visc = nu > 0;
    std::vector<double> E;
    if (visc) E = half_factor(g, nu, dt);
    auto apply_e = [&](const CVec& v, int pow) {
        CVec out(n);
        if (!visc || pow == 0) {
            out = v;
        } else if (pow == 1) {
            for (std::size_t i = 0; i < n; ++i) out[i] = v[i] * E[i];
        } else {
            for (std::size_t i = 0; i < n; ++i) out[i] = v[i] * (E[i] * E[i]);
        }
        return out;
    };

    Tendencies a = advective_rhs(w, w0, s0);
    if (dt > kCfl * g.spacing() / std::max(a.umax, 1e-300))
        throw CflViolation("step: dt exceeds CFL limit");

    CVec w2(n), s2(n);
    for (std::size_t i = 0; i < n; ++i) {
        w2[i] = w0[i] + (dt / 2) * a.dw[i];
        s2[i] = s0[i] + (dt / 2) * a.ds[i];
    }
    w2 = apply_e(w2, 1);
    s2 = apply_e(s2, 1);
    Tendencies b = advective_rhs(w, w2, s2);

    CVec w3 = apply_e(w0, 1), s3 = apply_e(s0, 1);
    for (std::size_t i = 0; i < n; ++i) {
        w3[i] += (dt / 2) * b.dw[i];
        s3[i] += (dt / 2) * b.ds[i];
    }
    Tendencies c = advective_rhs(w, w3, s3);

    CVec w4 = apply_e(w0, 2), s4 = apply_e(s0, 2);
    {
        CVec ec = apply_e(c.dw, 1), es = apply_e(c.ds, 1);
        for (std::size_t i = 0; i < n; ++i) {
            w4[i] += dt * ec[i];
            s4[i] += dt * es[i];
        }
    }
    Tendencies d = advective_rhs(w, w4, s4);

    StepResult out;
    out.wnew = apply_e(w0, 2);
    out.snew = apply_e(s0, 2);
    CVec ea = apply_e(a.dw, 2), eas = apply_e(a.ds, 2);
    CVec eb = apply_e(b.dw, 1), ebs = apply_e(b.ds, 1);
    CVec ec = apply_e(c.dw, 1), ecs = apply_e(c.ds, 1);
    for (std::size_t i = 0; i < n; ++i) {
        out.wnew[i] += (dt / 6) * (ea[i] + 2.0 * eb[i] + 2.0 * ec[i] + d.dw[i]);
        out.snew[i] += (dt / 6) * (eas[i] + 2.0 * ebs[i] + 2.0 * ecs[i] + d.ds[i]);
    }
    if (keep_stages) {
        out.stage_w[0] = w0;
        out.stage_w[1] = std::move(w2);
        out.stage_w[2] = std::move(w3);
        out.stage_w[3] = std::move(w4);
    }
    return out;
}

Workspace& workspace_for(const Grid2D& g) {
    thread_local std::unique_ptr<Workspace> ws;
    if (!ws || ws->g != g) ws = std::make_unique<Workspace>(g);
    return *ws;
}

} // namespace

SimState SimState::initial(ScalarField2D omega_l, ScalarField2D u_s, double nu) {
    if (omega_l.grid() != u_s.grid()) throw ConfigError("SimState: grid mismatch");
    if (nu < 0) throw ConfigError("SimState: nu must be >= 0");
    const double m = std::abs(omega_l.mean());
    if (m > 1e-12 * std::max(omega_l.max_abs(), 1e-300))
        throw NonZeroMean("SimState: omega^L must have zero mean");
    // pin the zero mode exactly
    auto c = omega_l.coefficients();
    std::vector<cplx> cc(c.begin(), c.end());
    cc[0] = 0;
    return SimState{0.0, ScalarField2D::from_coefficients(omega_l.grid(), std::move(cc)),
                    std::move(u_s), nu};
}

SimState step(const SimState& s, double dt) {
    Workspace& w = workspace_for(s.grid());
    auto wc = s.omega_l.coefficients();
    auto sc = s.u_s.coefficients();
    StepResult r = if_rk4(w, CVec(wc.begin(), wc.end()), CVec(sc.begin(), sc.end()), s.nu, dt, false);
    return SimState{s.t + dt, ScalarField2D::from_coefficients(s.grid(), std::move(r.wnew)),
                    ScalarField2D::from_coefficients(s.grid(), std::move(r.snew)), s.nu};
}

SimState step(const SimState& s, double dt, MarkerSet& markers) {
    Workspace& w = workspace_for(s.grid());
    auto wc = s.omega_l.coefficients();
    auto sc = s.u_s.coefficients();
    StepResult r = if_rk4(w, CVec(wc.begin(), wc.end()), CVec(sc.begin(), sc.end()), s.nu, dt, true);
    const Grid2D& g = s.grid();
    SpectralSampler s1(ScalarField2D::from_coefficients(g, std::move(r.stage_w[0])));
    SpectralSampler s2(ScalarField2D::from_coefficients(g, std::move(r.stage_w[1])));
    SpectralSampler s3(ScalarField2D::from_coefficients(g, std::move(r.stage_w[2])));
    SpectralSampler s4(ScalarField2D::from_coefficients(g, std::move(r.stage_w[3])));
    advect_markers_stages(s1, s2, s3, s4, markers, s.t, dt);
    return SimState{s.t + dt, ScalarField2D::from_coefficients(g, std::move(r.wnew)),
                    ScalarField2D::from_coefficients(g, std::move(r.snew)), s.nu};
}

VectorField2D small_scale_vorticity(const SimState& s) {
    return curl_2p5d(s.u_s);
}

double expected_spectrum(const SimState& s) {
    const double e = s.u_s.l2_sq();
    if (e <= 1e-28) throw ZeroSmallScale("expected_spectrum: ||u^S|| = 0");
    return grad_l2_sq(s.u_s) / e;
}

RunResult run(SimState s, const RunConfig& cfg, MarkerSet* markers) {
    RunResult out{.rows = {}, .final_state = s, .snapshots = {}, .dt_used = 0};
    double dt = cfg.dt;
    if (dt <= 0) {
        const VectorField2D u0 = biot_savart_2d(s.omega_l.dealiased());
        const double umax = std::max(u0.max_abs(), 1e-12);
        dt = cfg.cfl * s.grid().spacing() / umax;
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(cfg.T / dt - 1e-12)));
    dt = cfg.T / steps;
    out.dt_used = dt;
    const int cadence = cfg.diag_every > 0 ? cfg.diag_every : std::max(1, steps / 200);

    auto emit = [&](const SimState& st) {
        DiagRow r{};
        r.t = st.t;
        const VectorField2D u = biot_savart_2d(st.omega_l.dealiased());
        r.energy_l = energy(u);
        r.enstrophy_l = enstrophy(st.omega_l);
        r.enstrophy_s = grad_l2_sq(st.u_s);
        const double es = st.u_s.l2_sq();
        r.e_us = es > 1e-28 ? r.enstrophy_s / es : 0.0;
        if (cfg.track_strain) r.strain0 = strain_at_origin(st.omega_l).d1u1;
        if (cfg.track_key_integral)
            r.key_i0 = key_integral(st.omega_l, 0.0, cfg.key_nodes_theta, cfg.key_nodes_r);
        out.rows.push_back(r);
        if (markers)
            for (FlowMarker& m : *markers) m.history.push_back({st.t, m.eta, m.D});
    };

    emit(s);
    std::size_t snap_idx = 0;
    std::vector<double> snap_times = cfg.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    for (int k = 1; k <= steps; ++k) {
        s = markers ? step(s, dt, *markers) : step(s, dt);
        if (k % cadence == 0 || k == steps) emit(s);
        while (snap_idx < snap_times.size() && s.t >= snap_times[snap_idx] - dt / 2) {
            out.snapshots.emplace_back(s.t, s);
            ++snap_idx;
        }
    }
    out.final_state = s;
    return out;
}

} // namespace vcl
