#pragma once

#include "vortex/grid.hpp"

#include <complex>

namespace vortex {

/// Spectral helper for the 5-point periodic Laplacian: exact diagonalization
/// of constant-coefficient problems and a CG solver for the variable-diagonal
/// Newton systems, preconditioned by the constant-coefficient inverse.
/// One instance per solve; not shareable across threads.
class PeriodicPoisson {
  public:
    explicit PeriodicPoisson(const TorusGrid& grid);
    ~PeriodicPoisson();
    PeriodicPoisson(const PeriodicPoisson&) = delete;
    PeriodicPoisson& operator=(const PeriodicPoisson&) = delete;

    const TorusGrid& grid() const { return grid_; }

    /// out = five-point Laplacian of f (periodic).
    void apply_laplacian(const std::vector<double>& f, std::vector<double>& out) const;

    /// Solves (-lap + shift) u = rhs exactly in Fourier space (shift > 0, or
    /// shift = 0 with zero-mean rhs; then the zero mode of u is set to 0).
    std::vector<double> constant_coefficient_solve(const std::vector<double>& rhs,
                                                   double shift) const;

    /// Zero-mean G with lap G = delta_0^h - 1/Vol, delta carried on node 0
    /// with unit discrete mass.
    std::vector<double> greens_function() const;

    /// Conjugate gradients for (-lap + diag(q)) u = rhs with q >= 0 not
    /// identically zero; relative tolerance on the preconditioned residual.
    std::vector<double> diagonal_shift_solve(const std::vector<double>& q,
                                             const std::vector<double>& rhs,
                                             double rel_tol = 1e-12, int max_iter = 2000) const;

  private:
    void forward(const std::vector<double>& in) const;
    void inverse(std::vector<double>& out) const;

    TorusGrid grid_;
    std::vector<double> symbol_;  // eigenvalues of -lap, r2c layout
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    double* real_buf_ = nullptr;
    std::complex<double>* spec_buf_ = nullptr;
};

}  // namespace vortex
