#pragma once

#include "vcl/cascade_mc.hpp"
#include "vcl/evolve.hpp"
#include "vcl/initial_data.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vcl::exp {

// deterministic CSV table: doubles printed with %.17g, fixed column order
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
void write_csv(const std::string& path, const Table& t);
std::string format_row(const std::vector<double>& row);

enum class DataKind { BahouriChemin, Bubbles, SingleBubble };

struct ExperimentConfig {
    std::string experiment; // cascade | zeroth-law | deform-bc | deform-bubbles |
                            // inviscid-limit | flux-report | cascade-mc
    int n_lo = 4, n_hi = 6;
    int grid = 0;           // 0: auto minimal resolving grid per n
    double delta = 0.25;    // time horizon
    int big_m = 2;          // M in nu_n = 2^{-2Mn}
    double nu = 0;
    std::vector<double> nu_ladder{1e-4, 1e-5, 1e-6};
    double cfl = 0.4;
    DataKind data = DataKind::BahouriChemin;
    std::vector<double> bubbles_a;
    double c0_hat = 0.5;    // predicted-radius exponent helper for marker balls
    std::string out_dir;
    uint64_t seed = 7;
    // cascade-mc
    int d = 2, b = 2, shells = 3, samples = 2000;
    bool mc_antisymmetric = true;
    // flux-report
    std::string snapshot_path, us_path;
    std::vector<double> k_list{4, 8, 16};

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string canonical_json() const;
};

// minimal grid resolving level-n features of the given data kind
int auto_grid(DataKind kind, int n, int requested);

// initial state builders
SimState make_state_bc(int N, int n, double nu, bool thm2_profile, double small_radius = 0);
SimState make_state_bubbles(int N, const init::BubbleCoefficients& a, double nu);

struct CascadeResult {
    Table table; // n, N, ratio, norm_w0s, us_drift, m_n
    bool monotone = false;
    double min_gain = 0; // min over consecutive levels of ratio_{n+1}/ratio_n
};
CascadeResult run_cascade(const ExperimentConfig& cfg);

struct ZerothLawResult {
    Table table; // n, nu_n, D_n, a0_n, underresolved flag
    double a0_fitted = 0;   // min_n log D_n / log(1/nu_n), capped at 2/3
    double c0_slope = 0;    // fitted slope of log2 D_n vs n
    bool increasing = false;
};
ZerothLawResult run_zeroth_law(const ExperimentConfig& cfg);

struct DeformationResult {
    Table table;     // per n: N, t_star, inf|Deta| ball, |Deta(0)|, intI, c_meas, maxdet_err, envelope_ok
    Table marker_csv; // t, marker-id, eta1, eta2, D11, D12, D21, D22, detD, I(t,0)
    double slope = 0;       // bc: d log inf|Deta| / dn ; bubbles: vs log S_n
    double upper_c = 0;     // measured C in |Deta| <= exp(C n t)
    bool envelope_ok = false; // |Deta(t,0)| within factor 2 of exp(c int I)
    double max_det_err = 0;
};
DeformationResult run_deformation(const ExperimentConfig& cfg);

struct InviscidLimitResult {
    Table table; // nu, uL_diff, uS_diff, gradL_diff, omegaS_diff
    double slope = 0; // log ||uL diff|| vs log nu
};
InviscidLimitResult run_inviscid_limit(const ExperimentConfig& cfg);

struct FluxReportResult {
    Table table; // K, Pi integral, band fraction [2K,8K], cross-band remainder
};
FluxReportResult run_flux_report(const ScalarField2D& omega_l,
                                 const std::optional<ScalarField2D>& u_s,
                                 const std::vector<double>& k_list);

struct McRunResult {
    Table table; // k, meanE, stderrE, meanPi, stderrPi
    mc::McResult raw;
    double e_u = 0, pi_u = 0;
};
McRunResult run_cascade_mc(const ExperimentConfig& cfg);

// manifest JSON written next to every experiment output
void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const std::map<std::string, double>& measured);

uint64_t fnv1a(const std::string& text);

} // namespace vcl::exp
