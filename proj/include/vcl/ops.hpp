#pragma once

#include "vcl/field.hpp"

#include <span>
#include <vector>

namespace vcl {

// u = grad^perp(Delta^{-1} omega) with grad^perp = (-d2, d1), so curl u = omega.
// Requires mean(omega) ~ 0; the zero mode of u is set to zero.
VectorField2D biot_savart_2d(const ScalarField2D& omega);

// horizontal curl of the vertical velocity u^S = (0,0,rho): (d2 rho, -d1 rho)
VectorField2D curl_2p5d(const ScalarField2D& rho);

ScalarField2D curl(const VectorField2D& u);        // d1 u2 - d2 u1
ScalarField2D divergence(const VectorField2D& u);  // spectral

double energy(const VectorField2D& u);             // 1/2 int |u|^2
double enstrophy(const ScalarField2D& omega);      // int omega^2 = ||omega||_L2^2
double grad_l2_sq(const ScalarField2D& f);         // ||grad f||_L2^2 (spectral)

// Periodic interpolation. Direct spectral summation (exact for resolved
// fields) up to `direct_limit` points, 4x4 local Lagrange polynomial beyond.
inline constexpr std::size_t kInterpolateDirectLimit = 10000;
std::vector<double> interpolate(const ScalarField2D& f, std::span<const Vec2> pts);
std::vector<Vec2> interpolate(const VectorField2D& u, std::span<const Vec2> pts);

// Single-point velocity + gradient + vorticity derived from the vorticity
// spectrum in one pass (exact spectral summation over the dealiased band).
struct VelGrad {
    Vec2 u;
    double d1u1 = 0, d2u1 = 0, d1u2 = 0, omega = 0;
    double d2u2() const { return -d1u1; }
};
VelGrad velocity_gradient_at(const ScalarField2D& omega, Vec2 p);

} // namespace vcl
