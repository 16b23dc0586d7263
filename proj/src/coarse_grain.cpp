#include "vcl/coarse_grain.hpp"

#include "vcl/errors.hpp"
#include "vcl/ops.hpp"

#include <cmath>
#include <numbers>

namespace vcl {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

FilterSpec::FilterSpec(double k) : K(k) {
    if (!(k >= kPi)) throw ConfigError("FilterSpec: K must be >= 2*pi/period = pi");
}

ScalarField2D filter(const ScalarField2D& f, const FilterSpec& spec) {
    const Grid2D& g = f.grid();
    auto c = f.coefficients();
    std::vector<cplx> out(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const double m1 = g.mode(i1);
        const cplx* src = c.data() + static_cast<std::size_t>(i1) * g.n();
        cplx* dst = out.data() + static_cast<std::size_t>(i1) * g.n();
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const double m2 = g.mode(i2);
            dst[i2] = src[i2] * spec.transfer(kPi * kPi * (m1 * m1 + m2 * m2));
        }
    }
    return ScalarField2D::from_coefficients(g, std::move(out));
}

VectorField2D filter(const VectorField2D& u, const FilterSpec& spec) {
    return {filter(u.x, spec), filter(u.y, spec)};
}

TensorField2D stress_tensor(const VectorField2D& u, const FilterSpec& spec) {
    const VectorField2D ub = filter(u, spec);
    TensorField2D t{filter(u.x * u.x, spec) - ub.x * ub.x, filter(u.x * u.y, spec) - ub.x * ub.y,
                    ScalarField2D::zeros(u.grid()), filter(u.y * u.y, spec) - ub.y * ub.y, true};
    t.t21 = t.t12;
    return t;
}

TensorField2D deformation_tensor(const VectorField2D& u) {
    ScalarField2D s12 = 0.5 * (u.x.dy() + u.y.dx());
    return {u.x.dx(), s12, s12, u.y.dy(), true};
}

FluxResult energy_flux(const VectorField2D& u, const FilterSpec& spec) {
    const TensorField2D tau = stress_tensor(u, spec);
    const TensorField2D S = deformation_tensor(filter(u, spec));
    ScalarField2D pi = -1.0 * (S.t11 * tau.t11 + S.t22 * tau.t22 + 2.0 * (S.t12 * tau.t12));
    const double total = integral(pi);
    return {std::move(pi), total};
}

FluxResult energy_flux_2p5d(const VectorField2D& u, const ScalarField2D& u3,
                            const FilterSpec& spec) {
    const TensorField2D tau = stress_tensor(u, spec);
    const TensorField2D S = deformation_tensor(filter(u, spec));
    const ScalarField2D u3b = filter(u3, spec);
    // third-component stress row: tau_3j = filter(u3 u_j) - filter(u3) filter(u_j)
    const VectorField2D ub = filter(u, spec);
    const ScalarField2D tau31 = filter(u3 * u.x, spec) - u3b * ub.x;
    const ScalarField2D tau32 = filter(u3 * u.y, spec) - u3b * ub.y;
    // S_3j = (d_j u3bar)/2 since d_3 = 0
    const ScalarField2D S31 = 0.5 * u3b.dx();
    const ScalarField2D S32 = 0.5 * u3b.dy();
    ScalarField2D pi = -1.0 * (S.t11 * tau.t11 + S.t22 * tau.t22 + 2.0 * (S.t12 * tau.t12) +
                               2.0 * (S31 * tau31) + 2.0 * (S32 * tau32));
    const double total = integral(pi);
    return {std::move(pi), total};
}

BandDecomposition band_decompose(const VectorField2D& u, int n_max) {
    const Grid2D& g = u.grid();
    if (n_max < 1 || std::pow(2.0, n_max) > g.n() / 3.0)
        throw ConfigError("band_decompose: n_max out of range");
    BandDecomposition out{.bands = {}, .residual = u, .residual_l2 = 0};
    VectorField2D prev = filter(u, FilterSpec(std::pow(2.0, 1)));
    out.bands.push_back(prev);
    for (int n = 2; n <= n_max; ++n) {
        VectorField2D cur = filter(u, FilterSpec(std::pow(2.0, n)));
        out.bands.push_back({cur.x - prev.x, cur.y - prev.y});
        prev = cur;
    }
    out.residual = {u.x - prev.x, u.y - prev.y};
    out.residual_l2 = std::sqrt(out.residual.x.l2_sq() + out.residual.y.l2_sq());
    return out;
}

VectorField2D lp_band(const VectorField2D& u, int n) {
    const double hi = kPi * std::pow(2.0, n);
    const double lo = n <= 1 ? 0.0 : kPi * std::pow(2.0, n - 1);
    auto mask = [&](const ScalarField2D& f) {
        return f.multiplier([&](int m1, int m2) -> cplx {
            const double xi = kPi * std::hypot(double(m1), double(m2));
            return (xi > lo && xi <= hi) ? 1.0 : 0.0;
        });
    };
    return {mask(u.x), mask(u.y)};
}

TensorField2D first_order_stress(const VectorField2D& u_band, const FilterSpec& spec) {
    const double ck = spec.second_moment();
    const ScalarField2D d1u1 = u_band.x.dx(), d2u1 = u_band.x.dy();
    const ScalarField2D d1u2 = u_band.y.dx(), d2u2 = u_band.y.dy();
    ScalarField2D t11 = ck * (d1u1 * d1u1 + d2u1 * d2u1);
    ScalarField2D t12 = ck * (d1u1 * d1u2 + d2u1 * d2u2);
    ScalarField2D t22 = ck * (d1u2 * d1u2 + d2u2 * d2u2);
    return {std::move(t11), t12, t12, std::move(t22), true};
}

ModelFlowReport model_flow_report(const FilterSpec& spec, const std::vector<double>& radii_times_k) {
    ModelFlowReport rep{.rows = {}, .contraction_identity = 0, .all_positive = true};
    const double ck = spec.second_moment();
    for (double rk : radii_times_k) {
        ModelFlowRow row{};
        row.r = rk;
        row.tau_scale = rk <= 1.0 ? 1.0 : 1.0 / std::pow(rk, 4);
        // Pi = -C_K diag(1,1,0) tau_scale : diag(0,-1,1) = C_K tau_scale
        row.flux = ck * row.tau_scale;
        rep.all_positive = rep.all_positive && row.flux > 0;
        rep.rows.push_back(row);
    }
    rep.contraction_identity = -(1.0 * 0.0 + 1.0 * -1.0 + 0.0 * 1.0);
    return rep;
}

} // namespace vcl
