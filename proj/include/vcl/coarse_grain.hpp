#pragma once

#include "vcl/field.hpp"

#include <vector>

namespace vcl {

// Gaussian coarse-graining kernel G_K(r) = K^2/pi exp(-|Kr|^2) (unit mass);
// applied spectrally: multiplier exp(-|xi|^2 / (4K^2)) at xi = pi m.
struct FilterSpec {
    double K;
    explicit FilterSpec(double k);
    double transfer(double xi_sq) const { return std::exp(-xi_sq / (4.0 * K * K)); }
    // per-axis second moment of G_K; the C_K of the first-order stress
    double second_moment() const { return 1.0 / (2.0 * K * K); }
};

ScalarField2D filter(const ScalarField2D& f, const FilterSpec& spec);
VectorField2D filter(const VectorField2D& u, const FilterSpec& spec);

struct TensorField2D {
    ScalarField2D t11, t12, t21, t22;
    bool symmetric = false;
    const Grid2D& grid() const { return t11.grid(); }
};

// tau_K = filter(u tensor u) - filter(u) tensor filter(u); symmetric, p.s.d.
TensorField2D stress_tensor(const VectorField2D& u, const FilterSpec& spec);

// S = (grad u + grad u^T)/2 of the given (already filtered) field
TensorField2D deformation_tensor(const VectorField2D& u);

struct FluxResult {
    ScalarField2D pointwise; // Pi_K = -S_K : tau_K, positive = forward cascade
    double integral;
};
FluxResult energy_flux(const VectorField2D& u, const FilterSpec& spec);
// 2.5D variant: includes the vertical component rows/columns of tau and S
FluxResult energy_flux_2p5d(const VectorField2D& u, const ScalarField2D& u3, const FilterSpec& spec);

struct BandDecomposition {
    std::vector<VectorField2D> bands; // u^[1..n_max], K_n = 2^n
    VectorField2D residual;           // u - filter(u, K_{n_max})
    double residual_l2 = 0;
};
BandDecomposition band_decompose(const VectorField2D& u, int n_max);

// sharp Littlewood-Paley band |xi| in (pi 2^{n-1}, pi 2^n] (n=1 keeps the low ball)
VectorField2D lp_band(const VectorField2D& u, int n);

// tau^{(k,1)}_ij = C_K sum_h d_h u_i d_h u_j on a single band
TensorField2D first_order_stress(const VectorField2D& u_band, const FilterSpec& spec);

// closed-form evaluation of the model vortex-pair computation
struct ModelFlowRow {
    double r;           // radius in units of 1/k
    double tau_scale;   // tau = C_K diag(1,1,0) * tau_scale
    double flux;        // Pi = -tau : diag(0,-1,1) = C_K * tau_scale
};
struct ModelFlowReport {
    std::vector<ModelFlowRow> rows;
    double contraction_identity; // -diag(1,1,0) : diag(0,-1,1) = 1
    bool all_positive;
};
ModelFlowReport model_flow_report(const FilterSpec& spec, const std::vector<double>& radii_times_k);

} // namespace vcl
