#pragma once

#include "vcl/field.hpp"
#include "vcl/lagrangian.hpp"
#include "vcl/ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vcl {

// 2.5D state: omega^L drives 2D Euler/Navier-Stokes, u^S rides along as a
// passively transported (and diffused) vertical velocity component.
struct SimState {
    double t = 0;
    ScalarField2D omega_l;
    ScalarField2D u_s;
    double nu = 0;

    static SimState initial(ScalarField2D omega_l, ScalarField2D u_s, double nu);
    const Grid2D& grid() const { return omega_l.grid(); }
};

inline constexpr double kCfl = 0.5;

// one IF-RK4 step; advection dealiased by the 2/3 rule, viscosity exact per mode
SimState step(const SimState& s, double dt);
SimState step(const SimState& s, double dt, MarkerSet& markers);

// omega^S(t) = curl_2p5d(u^S(t)); the small-scale vorticity is never
// time-stepped, it is reconstructed from the transported primitive
VectorField2D small_scale_vorticity(const SimState& s);

// E[u^S] = ||omega^S||_L2^2 / ||u^S||_L2^2 (enstrophy/energy ratio)
double expected_spectrum(const SimState& s);

struct DiagRow {
    double t;
    double energy_l;
    double enstrophy_l;
    double enstrophy_s;
    double e_us;
    double strain0;
    double key_i0;
};

struct RunConfig {
    double T = 1.0;
    double dt = 0;          // 0: auto from CFL at t=0
    double cfl = 0.4;
    int diag_every = 0;     // 0: max(1, steps/200)
    bool track_strain = true;
    bool track_key_integral = false;
    int key_nodes_theta = 512;
    int key_nodes_r = 512;
    std::vector<double> snapshot_times;
};

struct RunResult {
    std::vector<DiagRow> rows;
    SimState final_state;
    std::vector<std::pair<double, SimState>> snapshots;
    double dt_used = 0;
};

RunResult run(SimState s, const RunConfig& cfg, MarkerSet* markers = nullptr);

} // namespace vcl
