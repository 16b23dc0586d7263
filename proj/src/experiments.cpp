#include "vcl/experiments.hpp"

#include "vcl/coarse_grain.hpp"
#include "vcl/errors.hpp"
#include "vcl/snapshot_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace vcl::exp {

using nlohmann::json;

namespace {
constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
}
} // namespace

std::string format_row(const std::vector<double>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += fmt(row[i]);
    }
    return line;
}

void write_csv(const std::string& path, const Table& t) {
    std::ofstream os(path);
    if (!os) throw IoError("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) os << ',';
        os << t.header[i];
    }
    os << '\n';
    for (const auto& r : t.rows) os << format_row(r) << '\n';
}

uint64_t fnv1a(const std::string& text) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {
DataKind parse_kind(const std::string& s) {
    if (s == "bc") return DataKind::BahouriChemin;
    if (s == "bubbles") return DataKind::Bubbles;
    if (s == "bubble") return DataKind::SingleBubble;
    throw ConfigError("unknown data kind: " + s);
}
std::string kind_name(DataKind k) {
    switch (k) {
        case DataKind::BahouriChemin: return "bc";
        case DataKind::Bubbles: return "bubbles";
        default: return "bubble";
    }
}
} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    c.experiment = j.value("experiment", "");
    if (j.contains("n_range")) {
        auto r = j.at("n_range");
        c.n_lo = r.at(0).get<int>();
        c.n_hi = r.at(1).get<int>();
    }
    c.grid = j.value("grid", c.grid);
    c.delta = j.value("delta", c.delta);
    c.big_m = j.value("M", c.big_m);
    c.nu = j.value("nu", c.nu);
    if (j.contains("nu_ladder")) c.nu_ladder = j.at("nu_ladder").get<std::vector<double>>();
    c.cfl = j.value("cfl", c.cfl);
    if (j.contains("data")) c.data = parse_kind(j.at("data").get<std::string>());
    if (j.contains("bubbles_a")) c.bubbles_a = j.at("bubbles_a").get<std::vector<double>>();
    c.c0_hat = j.value("c0_hat", c.c0_hat);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.seed = j.value("seed", c.seed);
    c.d = j.value("d", c.d);
    c.b = j.value("b", c.b);
    c.shells = j.value("shells", c.shells);
    c.samples = j.value("N", j.value("samples", c.samples));
    c.mc_antisymmetric = j.value("antisymmetric", c.mc_antisymmetric);
    c.snapshot_path = j.value("snapshot", c.snapshot_path);
    c.us_path = j.value("us", c.us_path);
    if (j.contains("K_list")) c.k_list = j.at("K_list").get<std::vector<double>>();
    if (c.n_lo > c.n_hi || c.n_lo < 1) throw ConfigError("bad n_range");
    if (c.delta <= 0) throw ConfigError("delta must be positive");
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::string ExperimentConfig::canonical_json() const {
    json j;
    j["experiment"] = experiment;
    j["n_range"] = {n_lo, n_hi};
    j["grid"] = grid;
    j["delta"] = delta;
    j["M"] = big_m;
    j["nu"] = nu;
    j["nu_ladder"] = nu_ladder;
    j["cfl"] = cfl;
    j["data"] = kind_name(data);
    j["bubbles_a"] = bubbles_a;
    j["c0_hat"] = c0_hat;
    j["seed"] = seed;
    j["d"] = d;
    j["b"] = b;
    j["shells"] = shells;
    j["samples"] = samples;
    j["antisymmetric"] = mc_antisymmetric;
    j["K_list"] = k_list;
    return j.dump();
}

int auto_grid(DataKind kind, int n, int requested) {
    if (requested > 0) return requested;
    const int need = kind == DataKind::BahouriChemin ? (1 << (n + 4)) : (1 << (n + 3));
    return std::max(need, 256);
}

SimState make_state_bc(int N, int n, double nu, bool thm2_profile, double small_radius) {
    const Grid2D g(N);
    ScalarField2D wl = init::smoothed_bahouri_chemin(g, n);
    ScalarField2D us = thm2_profile
                           ? init::small_scale_profile(g, n, init::LinearThm2{})
                           : init::small_scale_profile(
                                 g, init::CustomBall{{0, 0}, small_radius > 0 ? small_radius
                                                                              : std::pow(2.0, -n)});
    return SimState::initial(std::move(wl), std::move(us), nu);
}

SimState make_state_bubbles(int N, const init::BubbleCoefficients& a, double nu) {
    const Grid2D g(N);
    ScalarField2D wl = init::bourgain_li_bubbles(g, a);
    ScalarField2D us = ScalarField2D::zeros(g);
    return SimState::initial(std::move(wl), std::move(us), nu);
}

CascadeResult run_cascade(const ExperimentConfig& cfg) {
    CascadeResult out;
    out.table.header = {"n", "N", "ratio", "norm_w0s", "us_drift", "m_n"};
    std::vector<double> ratios;
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        const int N = auto_grid(DataKind::BahouriChemin, n, cfg.grid);
        SimState s0 = make_state_bc(N, n, cfg.nu, /*thm2=*/false);
        const double w0s = std::sqrt(grad_l2_sq(s0.u_s));
        const double e0 = expected_spectrum(s0);
        const double us0 = s0.u_s.l2_sq();
        RunConfig rc;
        rc.T = cfg.delta;
        rc.cfl = cfg.cfl;
        rc.track_strain = false;
        RunResult rr = run(std::move(s0), rc);
        const double ratio = expected_spectrum(rr.final_state) / e0;
        const double drift = std::abs(rr.final_state.u_s.l2_sq() - us0) / us0;
        const double mn = std::sqrt(grad_l2_sq(rr.final_state.u_s));
        out.table.rows.push_back({double(n), double(N), ratio, w0s, drift, mn});
        ratios.push_back(ratio);
    }
    out.monotone = true;
    out.min_gain = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        out.monotone = out.monotone && ratios[i] > ratios[i - 1];
        out.min_gain = std::min(out.min_gain, ratios[i] / ratios[i - 1]);
    }
    return out;
}

ZerothLawResult run_zeroth_law(const ExperimentConfig& cfg) {
    ZerothLawResult out;
    out.table.header = {"n", "nu_n", "D_n", "a0_n", "underresolved"};
    std::vector<double> ns, logd;
    double a0 = std::numeric_limits<double>::infinity();
    std::vector<double> dvals;
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        const int N = auto_grid(DataKind::BahouriChemin, n, cfg.grid);
        const double nu_n = std::pow(2.0, -2.0 * cfg.big_m * n);
        SimState s0 = make_state_bc(N, n, nu_n, /*thm2=*/true);
        RunConfig rc;
        rc.T = cfg.delta;
        rc.cfl = cfg.cfl;
        rc.diag_every = 1;
        rc.track_strain = false;
        RunResult rr = run(std::move(s0), rc);
        // time average of the full enstrophy ||omega^L||^2 + ||omega^S||^2
        double acc = 0;
        for (std::size_t i = 1; i < rr.rows.size(); ++i) {
            const double f0 = rr.rows[i - 1].enstrophy_l + rr.rows[i - 1].enstrophy_s;
            const double f1 = rr.rows[i].enstrophy_l + rr.rows[i].enstrophy_s;
            acc += 0.5 * (f0 + f1) * (rr.rows[i].t - rr.rows[i - 1].t);
        }
        const double dn = acc / cfg.delta;
        // viscous-scale resolution heuristic: band-edge enstrophy fraction
        const ScalarField2D wl = rr.final_state.omega_l;
        double tail = 0, tot = 0;
        {
            const Grid2D& g = wl.grid();
            auto c = wl.coefficients();
            const int cut = g.dealias_cut();
            for (int i1 = 0; i1 < g.n(); ++i1)
                for (int i2 = 0; i2 < g.n(); ++i2) {
                    const double e = std::norm(c[static_cast<std::size_t>(i1) * g.n() + i2]);
                    tot += e;
                    if (std::max(std::abs(g.mode(i1)), std::abs(g.mode(i2))) > cut * 4 / 5) tail += e;
                }
        }
        const bool under = tot > 0 && tail / tot > 1e-6;
        const double a0n = std::log(dn) / std::log(1.0 / nu_n);
        out.table.rows.push_back({double(n), nu_n, dn, a0n, under ? 1.0 : 0.0});
        a0 = std::min(a0, a0n);
        ns.push_back(n);
        logd.push_back(std::log2(dn));
        dvals.push_back(dn);
    }
    out.a0_fitted = std::min(a0, 2.0 / 3.0);
    out.c0_slope = fit_slope(ns, logd);
    out.increasing = true;
    for (std::size_t i = 1; i < dvals.size(); ++i)
        out.increasing = out.increasing && dvals[i] > dvals[i - 1];
    return out;
}

DeformationResult run_deformation(const ExperimentConfig& cfg) {
    DeformationResult out;
    out.table.header = {"n",       "N",     "t_star",      "inf_ball", "d_origin",
                        "int_I",   "c_meas", "max_det_err", "envelope_ok"};
    out.marker_csv.header = {"t",   "marker", "eta1", "eta2", "D11",
                             "D12", "D21",    "D22",  "detD", "I0"};
    const bool bubbles = cfg.data == DataKind::Bubbles;
    std::vector<double> xs, ys;
    out.envelope_ok = true;
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        const int N = auto_grid(cfg.data, n, cfg.grid);
        const double t_star = bubbles ? 1.0 / std::sqrt(double(n + 1)) : cfg.delta;
        SimState s0 = bubbles
                          ? make_state_bubbles(N, init::BubbleCoefficients::ones(n), cfg.nu)
                          : make_state_bc(N, n, cfg.nu, /*thm2=*/true);
        const double radius = bubbles ? 4.0 * s0.grid().spacing()
                                      : std::pow(2.0, -(1.0 + cfg.c0_hat * t_star) * n);
        MarkerSet markers = seed_markers_ball({0, 0}, radius, 9);
        RunConfig rc;
        rc.T = t_star;
        rc.cfl = cfg.cfl;
        rc.track_strain = true;
        rc.track_key_integral = true;
        RunResult rr = run(std::move(s0), rc, &markers);

        double inf_ball = std::numeric_limits<double>::infinity();
        double max_det = 0;
        for (const FlowMarker& m : markers) {
            inf_ball = std::min(inf_ball, m.D.frob());
            max_det = std::max(max_det, std::abs(m.D.det() - 1.0));
        }
        const double d_origin = markers.front().D.frob();
        // int_0^T I(t,0) dt and int strain dt by trapezoid over diagnostics
        double int_i = 0, int_a = 0;
        for (std::size_t i = 1; i < rr.rows.size(); ++i) {
            const double dt = rr.rows[i].t - rr.rows[i - 1].t;
            int_i += 0.5 * (rr.rows[i].key_i0 + rr.rows[i - 1].key_i0) * dt;
            int_a += 0.5 * (rr.rows[i].strain0 + rr.rows[i - 1].strain0) * dt;
        }
        const double c_meas = int_i > 0 ? int_a / int_i : 0.0;
        // factor-2 envelope along the whole trajectory of the origin marker
        bool env = true;
        {
            double ii = 0;
            std::size_t hist_idx = 0;
            const auto& hist = markers.front().history;
            for (std::size_t i = 1; i < rr.rows.size() && hist_idx < hist.size(); ++i) {
                const double dt = rr.rows[i].t - rr.rows[i - 1].t;
                ii += 0.5 * (rr.rows[i].key_i0 + rr.rows[i - 1].key_i0) * dt;
                while (hist_idx < hist.size() && hist[hist_idx].t < rr.rows[i].t - 1e-12) ++hist_idx;
                if (hist_idx < hist.size() &&
                    std::abs(hist[hist_idx].t - rr.rows[i].t) < 1e-12) {
                    const double pred = std::exp(c_meas * ii) * std::sqrt(2.0);
                    const double got = hist[hist_idx].D.frob();
                    if (got > 2.0 * pred || got < pred / 2.0) env = false;
                }
            }
        }
        out.envelope_ok = out.envelope_ok && env;
        out.max_det_err = std::max(out.max_det_err, max_det);
        out.table.rows.push_back({double(n), double(N), t_star, inf_ball, d_origin, int_i, c_meas,
                                  max_det, env ? 1.0 : 0.0});
        // marker trajectory CSV (origin marker history with I(t,0) samples)
        for (std::size_t mi = 0; mi < markers.size(); ++mi) {
            for (std::size_t hi = 0; hi < markers[mi].history.size(); ++hi) {
                const MarkerSample& h = markers[mi].history[hi];
                const double i0 = hi < rr.rows.size() ? rr.rows[hi].key_i0 : 0.0;
                out.marker_csv.rows.push_back({h.t, double(1000 * n + mi), h.eta.x, h.eta.y, h.D.a11,
                                               h.D.a12, h.D.a21, h.D.a22, h.D.det(), i0});
            }
        }
        const double sn = n + 1.0;
        xs.push_back(bubbles ? std::log(sn) : double(n));
        ys.push_back(std::log(std::max(inf_ball, 1e-300)));
        out.upper_c = std::max(out.upper_c, std::log(std::max(d_origin, 1.0)) / (n * t_star));
    }
    out.slope = fit_slope(xs, ys);
    return out;
}

InviscidLimitResult run_inviscid_limit(const ExperimentConfig& cfg) {
    InviscidLimitResult out;
    out.table.header = {"nu", "uL_diff", "uS_diff", "gradL_diff", "omegaS_diff"};
    const int n = cfg.n_lo;
    const int N = auto_grid(DataKind::BahouriChemin, n, cfg.grid);

    auto run_one = [&](double nu) {
        SimState s0 = make_state_bc(N, n, nu, /*thm2=*/true);
        RunConfig rc;
        rc.T = cfg.delta;
        rc.cfl = cfg.cfl;
        rc.track_strain = false;
        return run(std::move(s0), rc).final_state;
    };
    const SimState base = run_one(0.0);
    const VectorField2D ub = biot_savart_2d(base.omega_l.dealiased());
    const VectorField2D wsb = small_scale_vorticity(base);

    std::vector<double> lx, ly;
    for (double nu : cfg.nu_ladder) {
        const SimState sv = run_one(nu);
        const VectorField2D uv = biot_savart_2d(sv.omega_l.dealiased());
        const VectorField2D wsv = small_scale_vorticity(sv);
        const double ul = std::sqrt((uv.x - ub.x).l2_sq() + (uv.y - ub.y).l2_sq());
        const double us = std::sqrt((sv.u_s - base.u_s).l2_sq());
        const double gl = std::sqrt((sv.omega_l - base.omega_l).l2_sq());
        const double ws = std::sqrt((wsv.x - wsb.x).l2_sq() + (wsv.y - wsb.y).l2_sq());
        out.table.rows.push_back({nu, ul, us, gl, ws});
        if (nu > 0 && ul > 0) {
            lx.push_back(std::log(nu));
            ly.push_back(std::log(ul));
        }
    }
    out.slope = fit_slope(lx, ly);
    return out;
}

FluxReportResult run_flux_report(const ScalarField2D& omega_l,
                                 const std::optional<ScalarField2D>& u_s,
                                 const std::vector<double>& k_list) {
    FluxReportResult out;
    out.table.header = {"K", "flux_integral", "band_fraction_2_8", "cross_band_remainder"};
    const VectorField2D u = biot_savart_2d(omega_l.dealiased());
    for (double K : k_list) {
        const FilterSpec spec(K);
        const double total = u_s ? energy_flux_2p5d(u, *u_s, spec).integral
                                 : energy_flux(u, spec).integral;
        // per-band contributions via sharp LP bands
        const int n_max = static_cast<int>(std::floor(std::log2(u.grid().n() / 3.0)));
        double in_band = 0, sum_bands = 0;
        const TensorField2D S = deformation_tensor(filter(u, spec));
        for (int j = 1; j <= n_max; ++j) {
            const VectorField2D uj = lp_band(u, j);
            const TensorField2D tj = stress_tensor(uj, spec);
            const ScalarField2D pij =
                -1.0 * (S.t11 * tj.t11 + S.t22 * tj.t22 + 2.0 * (S.t12 * tj.t12));
            const double v = integral(pij);
            sum_bands += v;
            const double ratio = kPi * std::pow(2.0, j) / K;
            if (ratio >= 2.0 && ratio <= 8.0) in_band += v;
        }
        out.table.rows.push_back(
            {K, total, total != 0 ? in_band / total : 0.0, total - sum_bands});
    }
    return out;
}

McRunResult run_cascade_mc(const ExperimentConfig& cfg) {
    mc::SnapshotOptions opt;
    opt.antisymmetrize = cfg.mc_antisymmetric;
    if (!cfg.mc_antisymmetric) opt.seed_shift = cfg.seed * 2654435761ULL + 1;
    const mc::SnapshotU snap = mc::build_snapshot(cfg.d, cfg.b, opt);
    McRunResult out;
    out.raw = mc::monte_carlo(snap, cfg.shells, cfg.samples, cfg.seed);
    out.e_u = snap.e_u;
    out.pi_u = snap.pi_u;
    out.table.header = {"k", "meanE", "stderrE", "meanPi", "stderrPi"};
    for (const auto& s : out.raw.shells)
        out.table.rows.push_back({s.k, s.mean_e, s.stderr_e, s.mean_pi, s.stderr_pi});
    out.table.rows.push_back({0.0, out.raw.slope, 0.0, out.pi_u, out.e_u});
    return out;
}

void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const std::map<std::string, double>& measured) {
    json j;
    j["config"] = json::parse(cfg.canonical_json());
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.canonical_json())));
    j["config_hash"] = hash;
    j["code"] = "vcl 0.1.0";
    j["norm"] = "frobenius";
    for (const auto& [k, v] : measured) j["measured"][k] = v;
    std::ofstream os(path);
    if (!os) throw IoError("write_manifest: cannot open " + path);
    os << j.dump(2) << '\n';
}

} // namespace vcl::exp
