#pragma once

#include "vcl/field.hpp"

#include <vector>

namespace vcl::init {

// --- 1D profiles ---

// quintic smoothstep: 0 -> 1 on [0,1], first and second derivatives vanish at ends
double smoothstep5(double u);
double smoothstep5_int(double u); // integral from 0

// C-infinity step: exactly 1 for s <= 0, exactly 0 for s >= 1
double cinf_plateau(double s);

// radial profile of the single-bubble piece: 1 on [0, 0.81], support [0, 2],
// |h'| <= 1, |h''| < 10 (corner-rounded trapezoid)
double bump_h(double r);

// four-fold odd-odd arrangement of h around (+-2, +-2), signed
double bubble_zeta(double x1, double x2);

// Bourgain-Li radial bump: exactly 1 on |x| <= 1/8, support in |x| < 1/4
double bl_phi(double r);
// odd-odd arrangement of bl_phi around (+-1, +-1), signed
double bl_phi0(double x1, double x2);

// unit-mass radial mollifier supported in |x| < ell (plateau to ell/2)
double mollifier(double r, double ell);

// --- field constructors ---

// omega_{0,ell}(x) = zeta(x / ell); requires 4*ell < 1
ScalarField2D single_bubble(const Grid2D& g, double ell);

// sgn(x1)sgn(x2) cut at scale 2^-n near the axes, mollified at 2^-(n+1).
// Evaluated exactly (+-1/0) away from the cut lines, by piecewise
// Gauss-Legendre quadrature of the convolution near them.
ScalarField2D smoothed_bahouri_chemin(const Grid2D& g, int n);

struct BubbleCoefficients {
    std::vector<double> a; // a_1..a_n, non-negative, sup <= 1
    // S_0 = 1, S_k = S_{k-1} + a_k
    std::vector<double> partial_sums() const;
    static BubbleCoefficients ones(int n);
};

// sum_k a_k phi_0(2^k x); requires n <= log2(N) - 3
ScalarField2D bourgain_li_bubbles(const Grid2D& g, const BubbleCoefficients& coeffs);

// --- small-scale vertical velocity profiles ---

struct LinearThm2 {};                       // 2^{n/2} x2 on B(0,2^{-n/2}), 0 outside B(0,2^{2-n/2})
struct CustomBall {                          // same shape at given center/scale,
    Vec2 center{0, 0};                       // rescaled to ||grad rho||_L2 = 1
    double radius = 0.25;
};

ScalarField2D small_scale_profile(const Grid2D& g, int n, LinearThm2);
ScalarField2D small_scale_profile(const Grid2D& g, const CustomBall& ball);

// --- polar rectangles for the bubble-shape claim ---

struct PolarRect {
    double r1, r2, th1, th2;
    bool contains(double r, double th) const { return r1 < r && r < r2 && th1 < th && th < th2; }
    PolarRect scaled(double s) const { return {s * r1, s * r2, th1, th2}; }
};

// Constants derived from the actual bl_phi0 support and verified against it:
// phi_0 = 1 on `inner`, vanishes outside `outer` (first quadrant).
struct RectangleLadder {
    PolarRect outer;       // \bar R_0
    PolarRect inner;       // \underline R_0
    PolarRect inner_third; // \underline R_0^*
    static RectangleLadder standard();

    PolarRect outer_k(int k) const { return outer.scaled(std::pow(2.0, -k)); }
    PolarRect inner_k(int k) const { return inner.scaled(std::pow(2.0, -k)); }
    PolarRect inner_third_k(int k) const { return inner_third.scaled(std::pow(2.0, -k)); }
    // annulus \bar A_k = {2^{-k-1} < r < 2^{1-k}, 0 < theta < pi/2}
    static bool in_annulus(int k, double r, double th);
};

} // namespace vcl::init
