#pragma once

#include "vcl/errors.hpp"

#include <cmath>
#include <numbers>

namespace vcl {

// Doubly periodic square grid on the torus (R/2Z)^2.
// Grid points x_j = -1 + j*spacing, so the origin sits on the grid (j = n/2)
// and odd reflection x -> -x maps grid points to grid points.
// Fourier basis: e^{i pi m.x}, m integer; wavenumber(m) = pi*m.
class Grid2D {
public:
    explicit Grid2D(int n, double period = 2.0) : n_(n), period_(period) {
        if (n < 16) throw ConfigError("Grid2D: n must be >= 16");
        if ((n & (n - 1)) != 0) throw ConfigError("Grid2D: n must be a power of two");
        if (period != 2.0) throw ConfigError("Grid2D: period is fixed at 2");
    }

    int n() const { return n_; }
    double period() const { return period_; }
    double spacing() const { return period_ / n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    double coord(int j) const { return -1.0 + spacing() * j; }

    // signed integer mode for fft index i in [0, n)
    int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
    // fft index of signed mode m in [-n/2, n/2)
    int index_of_mode(int m) const { return m >= 0 ? m : m + n_; }

    double wavenumber(int i) const { return std::numbers::pi * mode(i); }

    // 2/3-rule band: |m| <= n/3 on each axis
    int dealias_cut() const { return n_ / 3; }
    bool in_band(int i1, int i2) const {
        int c = dealias_cut();
        return std::abs(mode(i1)) <= c && std::abs(mode(i2)) <= c;
    }

    // nearest grid index to coordinate x (reduced mod the period)
    int wrap(int j) const { int r = j % n_; return r < 0 ? r + n_ : r; }

    bool operator==(const Grid2D& o) const { return n_ == o.n_ && period_ == o.period_; }
    bool operator!=(const Grid2D& o) const { return !(*this == o); }

private:
    int n_;
    double period_;
};

} // namespace vcl
