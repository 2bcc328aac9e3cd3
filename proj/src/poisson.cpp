#include "vortex/poisson.hpp"
#include "vortex/linalg.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace vortex {

PointSource snap_source(const TorusGrid& grid, double x, double y, Int multiplicity) {
    if (multiplicity < 1) throw InvalidInput("source multiplicity must be >= 1");
    PointSource src;
    src.i = grid.wrap_x(static_cast<int>(std::lround(x / grid.hx())));
    src.j = grid.wrap_y(static_cast<int>(std::lround(y / grid.hy())));
    src.multiplicity = multiplicity;
    return src;
}

namespace {
// fftw plan creation/destruction is not thread-safe
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

PeriodicPoisson::PeriodicPoisson(const TorusGrid& grid) : grid_(grid) {
    const int nx = grid_.nx, ny = grid_.ny;
    const int nspec = ny * (nx / 2 + 1);
    real_buf_ = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
    spec_buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(nspec));
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan_fwd_ = fftw_plan_dft_r2c_2d(ny, nx, real_buf_,
                                         reinterpret_cast<fftw_complex*>(spec_buf_),
                                         FFTW_ESTIMATE);
        plan_bwd_ = fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(spec_buf_),
                                         real_buf_, FFTW_ESTIMATE);
    }
    symbol_.resize(nspec);
    const double ihx2 = 1.0 / (grid_.hx() * grid_.hx());
    const double ihy2 = 1.0 / (grid_.hy() * grid_.hy());
    for (int j = 0; j < ny; ++j) {
        const double sy = 2.0 - 2.0 * std::cos(2.0 * kPi * j / ny);
        for (int i = 0; i <= nx / 2; ++i) {
            const double sx = 2.0 - 2.0 * std::cos(2.0 * kPi * i / nx);
            symbol_[j * (nx / 2 + 1) + i] = sx * ihx2 + sy * ihy2;
        }
    }
}

PeriodicPoisson::~PeriodicPoisson() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(real_buf_);
    fftw_free(spec_buf_);
}

void PeriodicPoisson::forward(const std::vector<double>& in) const {
    std::copy(in.begin(), in.end(), real_buf_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

void PeriodicPoisson::inverse(std::vector<double>& out) const {
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    const double scale = 1.0 / grid_.size();
    out.resize(grid_.size());
    for (int k = 0; k < grid_.size(); ++k) out[k] = real_buf_[k] * scale;
}

void PeriodicPoisson::apply_laplacian(const std::vector<double>& f,
                                      std::vector<double>& out) const {
    const int nx = grid_.nx, ny = grid_.ny;
    const double ihx2 = 1.0 / (grid_.hx() * grid_.hx());
    const double ihy2 = 1.0 / (grid_.hy() * grid_.hy());
    out.resize(f.size());
    for (int j = 0; j < ny; ++j) {
        const int jm = (j + ny - 1) % ny, jp = (j + 1) % ny;
        for (int i = 0; i < nx; ++i) {
            const int im = (i + nx - 1) % nx, ip = (i + 1) % nx;
            const double c = f[grid_.index(i, j)];
            out[grid_.index(i, j)] = (f[grid_.index(ip, j)] + f[grid_.index(im, j)] - 2.0 * c) * ihx2 +
                                     (f[grid_.index(i, jp)] + f[grid_.index(i, jm)] - 2.0 * c) * ihy2;
        }
    }
}

std::vector<double> PeriodicPoisson::constant_coefficient_solve(const std::vector<double>& rhs,
                                                                double shift) const {
    forward(rhs);
    const int nspec = grid_.ny * (grid_.nx / 2 + 1);
    for (int k = 0; k < nspec; ++k) {
        const double denom = symbol_[k] + shift;
        if (denom == 0.0)
            spec_buf_[k] = 0.0;  // zero mode of the pure Laplacian
        else
            spec_buf_[k] /= denom;
    }
    std::vector<double> out;
    inverse(out);
    return out;
}

std::vector<double> PeriodicPoisson::greens_function() const {
    std::vector<double> rhs(grid_.size(), -1.0 / grid_.volume());
    rhs[0] += 1.0 / grid_.cell();
    // lap G = rhs  <=>  (-lap) G = -rhs
    for (double& r : rhs) r = -r;
    return constant_coefficient_solve(rhs, 0.0);
}

std::vector<double> PeriodicPoisson::diagonal_shift_solve(const std::vector<double>& q,
                                                          const std::vector<double>& rhs,
                                                          double rel_tol, int max_iter) const {
    const int n = grid_.size();
    double qbar = 0;
    for (double v : q) qbar += v;
    qbar /= n;
    if (!(qbar > 0)) throw InternalError("diagonal shift must be positive on average");

    std::vector<double> x(n, 0.0), r = rhs, z, p, ap(n), lap(n);
    z = constant_coefficient_solve(r, qbar);
    p = z;
    double rz = dot(r, z);
    const double rhs_norm = std::sqrt(dot(rhs, rhs));
    if (rhs_norm == 0.0) return x;
    for (int iter = 0; iter < max_iter; ++iter) {
        apply_laplacian(p, lap);
        for (int k = 0; k < n; ++k) ap[k] = -lap[k] + q[k] * p[k];
        const double alpha = rz / dot(p, ap);
        for (int k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        if (std::sqrt(dot(r, r)) <= rel_tol * rhs_norm) return x;
        z = constant_coefficient_solve(r, qbar);
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    return x;  // caller re-checks the nonlinear residual
}

}  // namespace vortex
