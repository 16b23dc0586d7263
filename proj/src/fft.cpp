#include "vcl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace vcl::fft {

namespace {

// One r2c/c2r plan pair per grid size, planned once against owned scratch.
// fftw planning is not thread-safe; execution on distinct arrays is.
struct Plans {
    int n = 0;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    double* real_scratch = nullptr;
    fftw_complex* half_scratch = nullptr;

    explicit Plans(int n_) : n(n_) {
        real_scratch = fftw_alloc_real(static_cast<std::size_t>(n) * n);
        half_scratch = fftw_alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1));
        r2c = fftw_plan_dft_r2c_2d(n, n, real_scratch, half_scratch, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_2d(n, n, half_scratch, real_scratch, FFTW_ESTIMATE);
    }
    ~Plans() {
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(c2r);
        fftw_free(real_scratch);
        fftw_free(half_scratch);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

Plans& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Plans>> cache;
    std::lock_guard lock(mu);
    auto& p = cache[n];
    if (!p) p = std::make_unique<Plans>(n);
    return *p;
}

// per-thread scratch so parallel workers never share buffers
struct Scratch {
    std::vector<double> real;
    std::vector<cplx> half;
};

Scratch& scratch_for(int n) {
    thread_local std::map<int, Scratch> pool;
    auto& s = pool[n];
    s.real.resize(static_cast<std::size_t>(n) * n);
    s.half.resize(static_cast<std::size_t>(n) * (n / 2 + 1));
    return s;
}

} // namespace

void forward(const Grid2D& g, const double* values, cplx* coefficients) {
    const int n = g.n();
    const int nh = n / 2 + 1;
    Plans& p = plans_for(n);
    Scratch& s = scratch_for(n);
    std::copy(values, values + g.size(), s.real.begin());
    fftw_execute_dft_r2c(p.r2c, s.real.data(), reinterpret_cast<fftw_complex*>(s.half.data()));

    // expand half spectrum to the full layout, applying phase and 1/n^2
    const double norm = 1.0 / (static_cast<double>(n) * n);
    for (int i1 = 0; i1 < n; ++i1) {
        const int i1neg = (n - i1) % n;
        cplx* row = coefficients + static_cast<std::size_t>(i1) * n;
        const cplx* hrow = s.half.data() + static_cast<std::size_t>(i1) * nh;
        const cplx* hrow_neg = s.half.data() + static_cast<std::size_t>(i1neg) * nh;
        for (int i2 = 0; i2 < n; ++i2) {
            const int m2 = g.mode(i2);
            cplx v = (m2 >= 0) ? hrow[m2] : std::conj(hrow_neg[-m2]);
            const double ph = ((i1 + i2) & 1) ? -norm : norm;
            row[i2] = v * ph;
        }
    }
}

void inverse(const Grid2D& g, const cplx* coefficients, double* values) {
    const int n = g.n();
    const int nh = n / 2 + 1;
    Plans& p = plans_for(n);
    Scratch& s = scratch_for(n);
    // compress: keep m2 in [0, n/2]; relies on conjugate symmetry of the input
    for (int i1 = 0; i1 < n; ++i1) {
        const cplx* row = coefficients + static_cast<std::size_t>(i1) * n;
        cplx* hrow = s.half.data() + static_cast<std::size_t>(i1) * nh;
        for (int i2 = 0; i2 < nh; ++i2) {
            const double ph = ((i1 + i2) & 1) ? -1.0 : 1.0;
            hrow[i2] = row[i2] * ph;
        }
    }
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(s.half.data()), s.real.data());
    std::copy(s.real.begin(), s.real.end(), values);
}

} // namespace vcl::fft
