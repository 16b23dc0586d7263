#pragma once

#include "vcl/grid.hpp"

#include <complex>

namespace vcl::fft {

using cplx = std::complex<double>;

// values (n*n, row-major [i1*n+i2]) -> true Fourier coefficients c_m of the
// basis e^{i pi m.x} on [-1,1)^2, same layout with fft index order.
// The grid offset (x_0 = -1) is absorbed as the phase (-1)^{i1+i2}.
void forward(const Grid2D& g, const double* values, cplx* coefficients);

// inverse of the above; takes the real part (input must be conjugate-symmetric)
void inverse(const Grid2D& g, const cplx* coefficients, double* values);

} // namespace vcl::fft
