#pragma once

#include "vortex/grid.hpp"

#include <optional>
#include <string>

namespace vortex {

enum class FieldModel { C, CP1 };

struct Infeasible : std::runtime_error {
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};
struct NotConverged : std::runtime_error {
    NotConverged(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

/// A gauge-equivalence class of vortex solutions, represented by the
/// gauge-invariant scalar field on the grid: w with |phi|^2 = (t/pi) e^w for
/// the flat target, u = log s for the sphere target. The field splits into a
/// grid Green's-function singular part plus a smooth Newton iterate.
struct FieldSolution {
    TorusGrid grid;
    FieldModel model = FieldModel::C;
    double coupling_a = 0;
    double t_real = 0;  // moment-map constant, real units
    std::vector<PointSource> vortices;
    std::vector<PointSource> antivortices;  // CP1 only
    std::vector<double> singular;
    std::vector<double> smooth;
    std::vector<double> field;  // singular + smooth
    double residual_norm = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;

    Int vortex_degree() const;      // N_1 (or N for the flat target)
    Int antivortex_degree() const;  // N_0
    double c_real() const;          // (N_1 - N_0) / (a^2 Vol M)
};

struct NewtonOptions {
    double tol = 1e-10;  // max-norm of the nonlinear residual
    int max_iter = 100;
    std::optional<std::vector<double>> initial_smooth;
};

/// lap w = 4 pi a^2 t (e^w - 1) + 4 pi sum n_i delta_{p_i}, t > 0.
/// Requires N < a^2 t Vol M; throws Infeasible otherwise.
FieldSolution solve_taubes(const TorusGrid& grid, double a, double t,
                           const std::vector<PointSource>& vortices,
                           const NewtonOptions& options = {});

/// lap u = 4 pi a^2 (pi e^u/(1+e^u) - t) + 4 pi (sum n_i delta - sum m_j delta),
/// 0 < t < pi. Requires c = (N_1 - N_0)/(a^2 Vol M) in (t - pi, t) and
/// disjoint vortex/antivortex nodes.
FieldSolution solve_cp1(const TorusGrid& grid, double a, double t,
                        const std::vector<PointSource>& vortices,
                        const std::vector<PointSource>& antivortices,
                        const NewtonOptions& options = {});

/// mu o phi per node (real units): t(1 - e^w) or t - pi e^u/(1+e^u).
std::vector<double> moment_density(const FieldSolution& sol);

/// Volume average of the moment density; equals c(a,P,M) up to residual
/// tolerance for a converged solution.
double moment_mean(const FieldSolution& sol);

/// Gauge-invariant energy density per node.
std::vector<double> energy_density(const FieldSolution& sol);

/// Node-sum quadrature of the energy density.
double total_energy(const FieldSolution& sol);

/// Fraction of the total |*F_A| carried by nodes within the given periodic
/// radius of some source node.
double flux_fraction(const FieldSolution& sol, double radius);

}  // namespace vortex
