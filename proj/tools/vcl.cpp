#include "vcl/errors.hpp"
#include "vcl/experiments.hpp"
#include "vcl/snapshot_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>

namespace {

using namespace vcl;
namespace fs = std::filesystem;

std::string out_path(const exp::ExperimentConfig& cfg, const std::string& name) {
    if (cfg.out_dir.empty()) return name;
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

void do_gen(const std::string& kind, int n, double ell, int N, const std::string& out) {
    const Grid2D g(N);
    ScalarField2D f = [&]() -> ScalarField2D {
        if (kind == "bc") return init::smoothed_bahouri_chemin(g, n);
        if (kind == "bubble") return init::single_bubble(g, ell);
        if (kind == "bubbles") return init::bourgain_li_bubbles(g, init::BubbleCoefficients::ones(n));
        if (kind == "rho") return init::small_scale_profile(g, n, init::LinearThm2{});
        throw ConfigError("gen: unknown kind " + kind);
    }();
    save_snapshot(out, {f, 0.0, 0.0, kind});
    std::cout << "wrote " << out << " (N=" << N << ", kind=" << kind << ")\n";
}

int do_run(exp::ExperimentConfig cfg) {
    std::map<std::string, double> measured;
    if (cfg.experiment == "cascade") {
        auto r = exp::run_cascade(cfg);
        exp::write_csv(out_path(cfg, "cascade.csv"), r.table);
        measured["monotone"] = r.monotone;
        measured["min_gain"] = r.min_gain;
        exp::write_manifest(out_path(cfg, "cascade.manifest.json"), cfg, measured);
        std::cout << "cascade: monotone=" << r.monotone << " min_gain=" << r.min_gain << "\n";
    } else if (cfg.experiment == "zeroth-law") {
        auto r = exp::run_zeroth_law(cfg);
        exp::write_csv(out_path(cfg, "zeroth_law.csv"), r.table);
        measured["a0"] = r.a0_fitted;
        measured["c0_slope"] = r.c0_slope;
        measured["increasing"] = r.increasing;
        exp::write_manifest(out_path(cfg, "zeroth_law.manifest.json"), cfg, measured);
        std::cout << "zeroth-law: a0=" << r.a0_fitted << " c0_slope=" << r.c0_slope << "\n";
    } else if (cfg.experiment == "deform-bc" || cfg.experiment == "deform-bubbles") {
        cfg.data = cfg.experiment == "deform-bubbles" ? exp::DataKind::Bubbles
                                                      : exp::DataKind::BahouriChemin;
        auto r = exp::run_deformation(cfg);
        exp::write_csv(out_path(cfg, "deform.csv"), r.marker_csv);
        exp::write_csv(out_path(cfg, "deform_summary.csv"), r.table);
        measured["slope"] = r.slope;
        measured["upper_c"] = r.upper_c;
        measured["max_det_err"] = r.max_det_err;
        exp::write_manifest(out_path(cfg, "deform.manifest.json"), cfg, measured);
        std::cout << "deformation: slope=" << r.slope << " max_det_err=" << r.max_det_err << "\n";
    } else if (cfg.experiment == "inviscid-limit") {
        auto r = exp::run_inviscid_limit(cfg);
        exp::write_csv(out_path(cfg, "inviscid.csv"), r.table);
        measured["slope"] = r.slope;
        exp::write_manifest(out_path(cfg, "inviscid.manifest.json"), cfg, measured);
        std::cout << "inviscid-limit: slope=" << r.slope << "\n";
    } else if (cfg.experiment == "cascade-mc") {
        auto r = exp::run_cascade_mc(cfg);
        exp::write_csv(out_path(cfg, "mc.csv"), r.table);
        measured["slope"] = r.raw.slope;
        measured["E_U"] = r.e_u;
        measured["Pi_U"] = r.pi_u;
        exp::write_manifest(out_path(cfg, "mc.manifest.json"), cfg, measured);
        std::cout << "cascade-mc: slope=" << r.raw.slope << " Pi_U=" << r.pi_u << "\n";
    } else if (cfg.experiment == "flux-report") {
        Snapshot snap = load_snapshot(cfg.snapshot_path);
        std::optional<ScalarField2D> us;
        if (!cfg.us_path.empty()) us = load_snapshot(cfg.us_path).field;
        auto r = exp::run_flux_report(snap.field, us, cfg.k_list);
        exp::write_csv(out_path(cfg, "flux.csv"), r.table);
        exp::write_manifest(out_path(cfg, "flux.manifest.json"), cfg, measured);
        std::cout << "flux-report: " << r.table.rows.size() << " rows\n";
    } else if (cfg.experiment == "run" || cfg.experiment.empty()) {
        const int n = cfg.n_lo;
        const int N = exp::auto_grid(cfg.data, n, cfg.grid);
        SimState s0 = cfg.data == exp::DataKind::Bubbles
                          ? exp::make_state_bubbles(N, init::BubbleCoefficients::ones(n), cfg.nu)
                          : exp::make_state_bc(N, n, cfg.nu, true);
        RunConfig rc;
        rc.T = cfg.delta;
        rc.cfl = cfg.cfl;
        RunResult rr = run(std::move(s0), rc);
        exp::Table t;
        t.header = {"t", "energy", "enstrophy_L", "enstrophy_S", "E_uS"};
        for (const auto& row : rr.rows)
            t.rows.push_back({row.t, row.energy_l, row.enstrophy_l, row.enstrophy_s, row.e_us});
        exp::write_csv(out_path(cfg, "run.csv"), t);
        exp::write_manifest(out_path(cfg, "run.manifest.json"), cfg, measured);
        std::cout << "run: " << rr.rows.size() << " diagnostic rows, dt=" << rr.dt_used << "\n";
    } else {
        throw ConfigError("unknown experiment: " + cfg.experiment);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vcl: vortex-stretching cascade laboratory"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write an initial-data snapshot");
    std::string gen_kind = "bc", gen_out = "field.vcl";
    int gen_n = 4, gen_N = 256;
    double gen_ell = 0.125;
    gen->add_option("--kind", gen_kind, "bc | bubble | bubbles | rho");
    gen->add_option("--n", gen_n, "level");
    gen->add_option("--ell", gen_ell, "bubble scale");
    gen->add_option("--N", gen_N, "grid points per axis");
    gen->add_option("--out", gen_out, "output path");

    // shared config machinery for experiment subcommands
    struct Common {
        std::string config_path;
        std::string out_dir;
        int n = 0, n_hi = 0, grid = 0;
        double delta = 0, nu = -1;
        uint64_t seed = 0;
        bool seed_set = false;
    };
    auto add_common = [](CLI::App* sub, Common& c) {
        sub->add_option("--config", c.config_path, "JSON config file");
        sub->add_option("--out", c.out_dir, "output directory");
        sub->add_option("--n", c.n, "level (or low end of range)");
        sub->add_option("--n-hi", c.n_hi, "high end of the level range");
        sub->add_option("--grid", c.grid, "grid override (0 = auto)");
        sub->add_option("--delta", c.delta, "time horizon");
        sub->add_option("--nu", c.nu, "viscosity");
    };
    auto apply_common = [](const Common& c, const std::string& experiment) {
        vcl::exp::ExperimentConfig cfg = c.config_path.empty()
                                             ? vcl::exp::ExperimentConfig{}
                                             : vcl::exp::ExperimentConfig::from_json_file(c.config_path);
        if (cfg.experiment.empty()) cfg.experiment = experiment;
        if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
        if (c.n > 0) cfg.n_lo = c.n;
        if (c.n_hi > 0) cfg.n_hi = std::max(c.n_hi, cfg.n_lo);
        else if (c.n > 0) cfg.n_hi = std::max(cfg.n_hi, c.n);
        if (c.grid > 0) cfg.grid = c.grid;
        if (c.delta > 0) cfg.delta = c.delta;
        if (c.nu >= 0) cfg.nu = c.nu;
        if (c.seed_set) cfg.seed = c.seed;
        return cfg;
    };

    Common run_c, deform_c, zeroth_c, inviscid_c, mc_c, flux_c, cascade_c;
    auto* runc = app.add_subcommand("run", "evolve a configuration and record diagnostics");
    add_common(runc, run_c);
    std::string run_data = "bc";
    runc->add_option("--data", run_data, "bc | bubbles");

    auto* cascade = app.add_subcommand("cascade", "small-scale expected-spectrum growth across n");
    add_common(cascade, cascade_c);

    auto* deform = app.add_subcommand("deform", "Lagrangian deformation growth");
    add_common(deform, deform_c);
    std::string deform_data = "bc", deform_markers = "origin,ball";
    deform->add_option("--data", deform_data, "bc | bubbles");
    deform->add_option("--markers", deform_markers, "marker seeding (origin,ball,fan)");

    auto* zeroth = app.add_subcommand("zeroth-law", "viscous dissipation analog across n");
    add_common(zeroth, zeroth_c);
    int zeroth_m = 2;
    zeroth->add_option("--M", zeroth_m, "viscosity exponent: nu_n = 2^{-2Mn}");

    auto* inviscid = app.add_subcommand("inviscid", "inviscid-limit convergence slopes");
    add_common(inviscid, inviscid_c);
    std::vector<double> inviscid_nus;
    inviscid->add_option("--nu-ladder", inviscid_nus, "viscosity ladder");

    auto* mcsub = app.add_subcommand("cascade-mc", "appendix Monte-Carlo spectrum");
    add_common(mcsub, mc_c);
    int mc_d = 2, mc_b = 2, mc_shells = 3, mc_samples = 2000;
    bool mc_plain = false;
    mcsub->add_option("--d", mc_d, "dimension (2 or 3)");
    mcsub->add_option("--b", mc_b, "locality factor");
    mcsub->add_option("--shells", mc_shells, "number of dyadic shells");
    mcsub->add_option("--N", mc_samples, "ensemble size");
    uint64_t mc_seed = 7;
    auto* seed_opt = mcsub->add_option("--seed", mc_seed, "rng seed");
    mcsub->add_flag("--symmetry-broken", mc_plain,
                    "use the shifted seed with nonzero snapshot flux");

    auto* flux = app.add_subcommand("flux", "coarse-grained energy flux of a snapshot");
    add_common(flux, flux_c);
    std::string flux_snapshot, flux_us;
    std::vector<double> flux_ks{4, 8, 16};
    flux->add_option("--snapshot", flux_snapshot, "VCL1 vorticity snapshot")->required();
    flux->add_option("--us", flux_us, "VCL1 vertical-velocity snapshot");
    flux->add_option("--K", flux_ks, "filter wavenumbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            do_gen(gen_kind, gen_n, gen_ell, gen_N, gen_out);
            return 0;
        }
        if (runc->parsed()) {
            auto cfg = apply_common(run_c, "run");
            if (run_data == "bubbles") cfg.data = vcl::exp::DataKind::Bubbles;
            return do_run(cfg);
        }
        if (cascade->parsed()) return do_run(apply_common(cascade_c, "cascade"));
        if (deform->parsed()) {
            auto cfg = apply_common(deform_c, deform_data == "bubbles" ? "deform-bubbles"
                                                                       : "deform-bc");
            return do_run(cfg);
        }
        if (zeroth->parsed()) {
            auto cfg = apply_common(zeroth_c, "zeroth-law");
            cfg.big_m = zeroth_m;
            return do_run(cfg);
        }
        if (inviscid->parsed()) {
            auto cfg = apply_common(inviscid_c, "inviscid-limit");
            if (!inviscid_nus.empty()) cfg.nu_ladder = inviscid_nus;
            return do_run(cfg);
        }
        if (mcsub->parsed()) {
            auto cfg = apply_common(mc_c, "cascade-mc");
            cfg.d = mc_d;
            cfg.b = mc_b;
            cfg.shells = mc_shells;
            cfg.samples = mc_samples;
            if (!seed_opt->empty()) cfg.seed = mc_seed;
            cfg.mc_antisymmetric = !mc_plain;
            return do_run(cfg);
        }
        if (flux->parsed()) {
            auto cfg = apply_common(flux_c, "flux-report");
            cfg.snapshot_path = flux_snapshot;
            cfg.us_path = flux_us;
            cfg.k_list = flux_ks;
            return do_run(cfg);
        }
    } catch (const vcl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
