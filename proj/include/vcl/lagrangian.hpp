#pragma once

#include "vcl/field.hpp"
#include "vcl/ops.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace vcl {

struct Mat2 {
    double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
    double det() const { return a11 * a22 - a12 * a21; }
    double frob() const { return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22); }
    static Mat2 identity() { return {}; }
    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator*(double s) const { return {s * a11, s * a12, s * a21, s * a22}; }
};

struct MarkerSample {
    double t;
    Vec2 eta;
    Mat2 D;
};

// material point carrying the flow-map value and its deformation gradient
struct FlowMarker {
    Vec2 x0;
    Vec2 eta;
    Mat2 D = Mat2::identity();
    std::vector<MarkerSample> history;
    static FlowMarker at(Vec2 p) { return {p, p, Mat2::identity(), {}}; }
};

using MarkerSet = std::vector<FlowMarker>;

MarkerSet seed_markers_ball(Vec2 center, double radius, int count);       // center + ring
MarkerSet seed_markers_fan(double r_min, double r_max, int count, double theta); // log-spaced radial fan

// point sample of velocity and its gradient; grad rows: [d1u1 d2u1; d1u2 d2u2]
struct VelocitySampler {
    virtual ~VelocitySampler() = default;
    virtual VelGrad at(Vec2 p, double t) const = 0;
};

struct AnalyticSampler final : VelocitySampler {
    std::function<VelGrad(Vec2, double)> f;
    explicit AnalyticSampler(std::function<VelGrad(Vec2, double)> fn) : f(std::move(fn)) {}
    VelGrad at(Vec2 p, double t) const override { return f(p, t); }
};

struct SpectralSampler final : VelocitySampler {
    ScalarField2D omega;
    explicit SpectralSampler(ScalarField2D om) : omega(std::move(om)) {}
    VelGrad at(Vec2 p, double) const override { return velocity_gradient_at(omega, p); }
};

// RK4 advance of (eta, D) under a frozen-in-time or analytic sampler.
// Throws DeterminantDrift if |det D - 1| > 1e-2 after a step.
void advect_markers(const VelocitySampler& v, MarkerSet& markers, double t0, double t1, double dt,
                    bool check_det = true);

// one RK4 marker stage set driven by four stage samplers (used by the field stepper)
void advect_markers_stages(const VelocitySampler& s1, const VelocitySampler& s2,
                           const VelocitySampler& s3, const VelocitySampler& s4, MarkerSet& markers,
                           double t, double dt, bool check_det = true);

// I(t,r) = (4/pi) int_0^{pi/2} int_{2r}^1 sin(2th)/s omega(s,th) ds dth,
// midpoint polar quadrature; node counts default to the 4N x 2N ladder.
double key_integral(const ScalarField2D& omega, double r, int n_theta = 0, int n_r = 0);

struct StrainAtOrigin {
    double d1u1 = 0, d2u1 = 0, d1u2 = 0;
};
// spectral Biot-Savart derivatives evaluated at the origin (odd-odd data)
StrainAtOrigin strain_at_origin(const ScalarField2D& omega);

struct PolarRates {
    double radial_direct = 0, angular_direct = 0;   // from u(eta)
    double radial_split = 0, angular_split = 0;     // Key-Lemma principal part
    double key_I = 0;                               // I(t,|eta|)
    double b_radial = 0, b_angular = 0;             // remainder / |eta| (bounds |B|)
};
PolarRates polar_rates(const FlowMarker& m, const VelocitySampler& v, const ScalarField2D& omega,
                       double t = 0.0);

struct YudovichReport {
    struct Pair {
        Vec2 x, xp;
        double q;   // initial separation
        double Q;   // mapped separation
        double c;   // smallest c validating both Holder bounds
    };
    std::vector<Pair> pairs;
    double max_c = 0;
};
// Given markers advected to time t (eta fields filled), fit the Yudovich
// constant per pair of consecutive markers (2k markers = k pairs).
YudovichReport yudovich_check(const MarkerSet& pairs, double t, double omega0_inf);

struct BubbleShape {
    bool core_ok = false;
    bool support_ok = false;
    double core_min = 0;       // min omega over the inner-third rectangle
    double worst_excursion = 0; // max over support markers of distance outside the annulus
};
// core: field minimum over grid points of \underline R_k^*; support: all
// markers seeded in supp(phi_k) still inside \bar A_k (material support).
BubbleShape bubble_shape_check(const ScalarField2D& omega, int k, double a_k,
                               const MarkerSet& support_markers);

// markers on the boundary of the k-th bubble support rectangle
MarkerSet seed_bubble_support_markers(int k, int per_side = 16);

} // namespace vcl
