#pragma once

#include "vcl/errors.hpp"
#include "vcl/field.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace vcl::mc {

using cplx = std::complex<double>;

// integer lattice point in Z^d (third component unused for d = 2)
using LatticePt = std::array<int, 3>;

// shell pair at wavenumber k: A^L_k = {k/2 <= |xi| <= 2k}, A^S_k = b A^L_k
struct ShellSpec {
    int b = 2;
    double k = 1;
    int d = 2;
    bool in_large(double r) const { return k / 2 <= r && r <= 2 * k; }
    bool in_small(double r) const { return b * k / 2.0 <= r && r <= 2.0 * b * k; }
    bool in_union(double r) const { return in_large(r) || in_small(r); }
};

// complex vector-valued coefficients on the unit lattice cube |xi|_inf <= R.
// `scale` records the physical wavenumber k the unit indices stand for.
class LatticeField {
public:
    LatticeField(int d, int R, double scale = 1.0);
    int d() const { return d_; }
    int R() const { return R_; }
    double scale() const { return scale_; }
    void set_scale(double s) { scale_ = s; }

    bool inside(const LatticePt& p) const;
    cplx* at(const LatticePt& p);             // d components
    const cplx* at(const LatticePt& p) const; // null semantics: use inside() first

    double energy() const; // sum |v|^2 over all stored points
    void for_each(const std::function<void(const LatticePt&, const cplx*)>& f) const;
    void for_each_mut(const std::function<void(const LatticePt&, cplx*)>& f);

private:
    int d_, R_;
    double scale_;
    int side_;
    std::vector<cplx> data_;
    std::size_t idx(const LatticePt& p) const;
};

// exact lattice rotations: quarter turns about e3 plus (d=3) the octahedral group
struct Rotation {
    // row-major dxd matrix with integer entries for exact rotations
    std::array<std::array<double, 3>, 3> m;
    bool lattice_exact = true;
    static Rotation identity(int d);
    static Rotation quarter_turn(int d, int quarters); // about e3
    static Rotation about_e3(int d, double theta);     // continuous, needs resampling
    static Rotation octahedral(int index);             // d=3, 24 elements
    Rotation compose(const Rotation& o) const;
};

// (R o u)(xi) = R u(R^{-1} xi); nearest-lattice resampling with a global
// energy-preserving correction when the rotation is not lattice-exact
LatticeField rotate_hat(const LatticeField& u, const Rotation& r);

struct SnapshotOptions {
    bool antisymmetrize = true; // enforce (R_{pi/2} o U) = -U
    uint64_t seed_shift = 0;    // nonzero: add a shifted copy to break the symmetry
};

struct SnapshotU {
    LatticeField u_hat;
    int b = 2;
    int d = 2;
    double e_u = 0;  // shell energy sum |U|^2
    double pi_u = 0; // three_wave(U,U,U) at k = 1
    bool antisymmetric = true;
};

// Band-limits the single-bubble velocity to A^L_1 u A^S_1, projects
// divergence-free, then (optionally) projects onto the R_{pi/2}-antisymmetric
// component. With antisymmetrize the flux pi_u vanishes identically (the
// trilinear form is rotation invariant, so U -> -U under R_{pi/2} forces
// J(U,U,U) = -J(U,U,U)); the symmetry-broken variant keeps pi_u > 0.
SnapshotU build_snapshot(int d, int b, const SnapshotOptions& opt = {});

// J(u,v,w) = sum (chi_S u(xi-eta).i xi)(chi_S v(eta) . chi_L w(-xi));
// fields must share the shell's scale. Returns the real part; *imag_residual
// (if given) receives |Im|/(|Re|+eps).
double three_wave(const LatticeField& u, const LatticeField& v, const LatticeField& w,
                  const ShellSpec& shell, double* imag_residual = nullptr);

// E(k) = k^{-1} int chi_{A^S_k u A^L_k} |u|^2
double shell_energy(const LatticeField& u, const ShellSpec& shell);

// alpha = -(1+3d)/3; asserts the induced spectrum exponent is -5/3
double alpha_solve(int d);

enum class RotationMode { LatticeExact, Continuous };

struct EnsembleSample {
    int n = 0; // hierarchy depth; b^{nd} summands
    std::vector<Rotation> rot;          // Q_j composed with R_theta(j)
    std::vector<std::array<double, 3>> y; // shifts
};

EnsembleSample draw_sample(int d, int b, int n, double k, std::mt19937_64& rng, RotationMode mode);

// u_hat(k xi) = sum_j k^alpha (rot_j o U)(xi) e^{i y_j . xi / k}
LatticeField synthesize(const SnapshotU& snap, const EnsembleSample& sample, double k,
                        double alpha);

struct ShellStats {
    double k = 0;
    double mean_e = 0, stderr_e = 0;
    double mean_pi = 0, stderr_pi = 0;
};

struct McResult {
    std::vector<ShellStats> shells;
    double slope = 0;        // log mean_e vs log k
    double alpha = 0;
    int samples = 0;
};

McResult monte_carlo(const SnapshotU& snap, int n_shells, int samples, uint64_t seed,
                     RotationMode mode = RotationMode::LatticeExact);

} // namespace vcl::mc
