#include "vortex/solver.hpp"

#include "vortex/linalg.hpp"
#include "vortex/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace vortex {

namespace {

double safe_exp(double x) { return std::exp(std::clamp(x, -500.0, 500.0)); }

// 1/(1 + e^{-u}), monotone, clamped against overflow
double sigmoid(double u) { return 1.0 / (1.0 + safe_exp(-u)); }

Int total_multiplicity(const std::vector<PointSource>& sources) {
    Int n = 0;
    for (const auto& s : sources) n += s.multiplicity;
    return n;
}

void check_sources(const TorusGrid& grid, const std::vector<PointSource>& sources) {
    for (const auto& s : sources) {
        if (s.multiplicity < 1) throw InvalidInput("source multiplicity must be >= 1");
        if (s.i < 0 || s.i >= grid.nx || s.j < 0 || s.j >= grid.ny)
            throw InvalidInput("source node outside the fundamental domain");
    }
}

// 4 pi sum_i n_i G(. - p_i) (minus the antivortex copy), computed from one
// Green's function by periodic shifts.
std::vector<double> singular_part(const PeriodicPoisson& poisson,
                                  const std::vector<PointSource>& plus,
                                  const std::vector<PointSource>& minus) {
    const TorusGrid& grid = poisson.grid();
    std::vector<double> s(grid.size(), 0.0);
    if (plus.empty() && minus.empty()) return s;
    std::vector<double> green = poisson.greens_function();
    auto add = [&](const PointSource& src, double sign) {
        const double w = 4.0 * kPi * sign * static_cast<double>(src.multiplicity);
        for (int j = 0; j < grid.ny; ++j) {
            const int js = grid.wrap_y(j - src.j);
            for (int i = 0; i < grid.nx; ++i) {
                const int is = grid.wrap_x(i - src.i);
                s[grid.index(i, j)] += w * green[grid.index(is, js)];
            }
        }
    };
    for (const auto& src : plus) add(src, 1.0);
    for (const auto& src : minus) add(src, -1.0);
    return s;
}

struct NewtonProblem {
    // nonlinear term f(w) and its derivative, so that the smooth part solves
    // lap v = f(singular + v) + mean_correction
    std::function<double(double)> f;
    std::function<double(double)> df;
    double mean_correction = 0;
};

void run_newton(FieldSolution& sol, const PeriodicPoisson& poisson, const NewtonProblem& problem,
                const NewtonOptions& options) {
    const int n = sol.grid.size();
    std::vector<double>& v = sol.smooth;
    if (options.initial_smooth) {
        if (static_cast<int>(options.initial_smooth->size()) != n)
            throw InvalidInput("initial guess has wrong size");
        v = *options.initial_smooth;
    }

    std::vector<double> lap(n), residual(n), q(n);
    struct Norms {
        double max = 0, l2 = 0;
    };
    auto compute_residual = [&](const std::vector<double>& smooth, std::vector<double>& out) {
        poisson.apply_laplacian(smooth, lap);
        Norms norms;
        for (int k = 0; k < n; ++k) {
            const double wk = sol.singular[k] + smooth[k];
            out[k] = lap[k] - problem.f(wk) - problem.mean_correction;
            norms.max = std::max(norms.max, std::abs(out[k]));
            norms.l2 += out[k] * out[k];
        }
        norms.l2 = std::sqrt(norms.l2);
        return norms;
    };

    Norms norms = compute_residual(v, residual);
    sol.residual_history.push_back(norms.max);
    int iter = 0;
    while (norms.max > options.tol && iter < options.max_iter) {
        for (int k = 0; k < n; ++k) q[k] = problem.df(sol.singular[k] + v[k]);
        // Newton system: (lap - diag(q)) s = -residual
        std::vector<double> step = poisson.diagonal_shift_solve(q, residual);
        // the Newton direction descends the l2 residual; damp on that norm
        double lambda = 1.0;
        std::vector<double> trial(n), trial_res(n);
        Norms trial_norms;
        bool improved = false;
        for (int halving = 0; halving <= 30; ++halving) {
            for (int k = 0; k < n; ++k) trial[k] = v[k] + lambda * step[k];
            trial_norms = compute_residual(trial, trial_res);
            if (trial_norms.l2 < norms.l2) { improved = true; break; }
            lambda *= 0.5;
        }
        if (!improved) break;  // stagnation; report as non-convergence
        v.swap(trial);
        residual.swap(trial_res);
        norms = trial_norms;
        ++iter;
        sol.residual_history.push_back(norms.max);
    }
    sol.iterations = iter;
    sol.residual_norm = norms.max;
    sol.converged = norms.max <= options.tol;
    sol.field.resize(n);
    for (int k = 0; k < n; ++k) sol.field[k] = sol.singular[k] + v[k];
}

}  // namespace

Int FieldSolution::vortex_degree() const { return total_multiplicity(vortices); }
Int FieldSolution::antivortex_degree() const { return total_multiplicity(antivortices); }

double FieldSolution::c_real() const {
    return static_cast<double>(vortex_degree() - antivortex_degree()) /
           (coupling_a * coupling_a * grid.volume());
}

FieldSolution solve_taubes(const TorusGrid& grid, double a, double t,
                           const std::vector<PointSource>& vortices,
                           const NewtonOptions& options) {
    if (!(a > 0)) throw InvalidInput("coupling must be positive");
    if (!(t > 0)) throw InvalidInput("flat-target model needs t > 0");
    check_sources(grid, vortices);
    const Int n_total = total_multiplicity(vortices);
    const double bound = a * a * t * grid.volume();
    if (static_cast<double>(n_total) >= bound) {
        std::ostringstream msg;
        msg << "no solutions: N = " << n_total << " is not below a^2 t Vol M = " << bound;
        throw Infeasible(msg.str());
    }

    FieldSolution sol;
    sol.grid = grid;
    sol.model = FieldModel::C;
    sol.coupling_a = a;
    sol.t_real = t;
    sol.vortices = vortices;
    sol.smooth.assign(grid.size(), 0.0);

    PeriodicPoisson poisson(grid);
    sol.singular = singular_part(poisson, vortices, {});

    NewtonProblem problem;
    const double k1 = 4.0 * kPi * a * a * t;
    problem.f = [k1](double w) { return k1 * (safe_exp(w) - 1.0); };
    problem.df = [k1](double w) { return k1 * safe_exp(w); };
    problem.mean_correction = 4.0 * kPi * static_cast<double>(n_total) / grid.volume();
    run_newton(sol, poisson, problem, options);
    return sol;
}

FieldSolution solve_cp1(const TorusGrid& grid, double a, double t,
                        const std::vector<PointSource>& vortices,
                        const std::vector<PointSource>& antivortices,
                        const NewtonOptions& options) {
    if (!(a > 0)) throw InvalidInput("coupling must be positive");
    if (!(t > 0.0 && t < kPi)) throw InvalidInput("sphere-target model needs 0 < t < pi");
    check_sources(grid, vortices);
    check_sources(grid, antivortices);
    for (const auto& p : vortices)
        for (const auto& q : antivortices)
            if (p.i == q.i && p.j == q.j)
                throw InvalidInput("vortex and antivortex on the same node");
    const Int n1 = total_multiplicity(vortices);
    const Int n0 = total_multiplicity(antivortices);
    const double c = static_cast<double>(n1 - n0) / (a * a * grid.volume());
    if (!(c > t - kPi && c < t)) {
        std::ostringstream msg;
        msg << "no solutions: c = " << c << " is not in (" << (t - kPi) << ", " << t << ")";
        throw Infeasible(msg.str());
    }

    FieldSolution sol;
    sol.grid = grid;
    sol.model = FieldModel::CP1;
    sol.coupling_a = a;
    sol.t_real = t;
    sol.vortices = vortices;
    sol.antivortices = antivortices;
    // spatially constant solution of the source-free equation
    sol.smooth.assign(grid.size(), std::log(t / (kPi - t)));

    PeriodicPoisson poisson(grid);
    sol.singular = singular_part(poisson, vortices, antivortices);

    NewtonProblem problem;
    const double k1 = 4.0 * kPi * a * a;
    problem.f = [k1, t](double u) { return k1 * (kPi * sigmoid(u) - t); };
    problem.df = [k1](double u) {
        const double s = sigmoid(u);
        return k1 * kPi * s * (1.0 - s);
    };
    problem.mean_correction = 4.0 * kPi * static_cast<double>(n1 - n0) / grid.volume();
    run_newton(sol, poisson, problem, options);
    return sol;
}

std::vector<double> moment_density(const FieldSolution& sol) {
    std::vector<double> mu(sol.field.size());
    if (sol.model == FieldModel::C) {
        for (std::size_t k = 0; k < mu.size(); ++k)
            mu[k] = sol.t_real * (1.0 - safe_exp(sol.field[k]));
    } else {
        for (std::size_t k = 0; k < mu.size(); ++k)
            mu[k] = sol.t_real - kPi * sigmoid(sol.field[k]);
    }
    return mu;
}

double moment_mean(const FieldSolution& sol) {
    if (!sol.converged) throw InvalidInput("moment_mean needs a converged solution");
    std::vector<double> mu = moment_density(sol);
    double sum = 0;
    for (double v : mu) sum += v;
    return sum * sol.grid.cell() / sol.grid.volume();
}

std::vector<double> energy_density(const FieldSolution& sol) {
    const TorusGrid& grid = sol.grid;
    const double a2 = sol.coupling_a * sol.coupling_a;
    std::vector<double> density(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        const int jm = grid.wrap_y(j - 1), jp = grid.wrap_y(j + 1);
        for (int i = 0; i < grid.nx; ++i) {
            const int im = grid.wrap_x(i - 1), ip = grid.wrap_x(i + 1);
            const double gx =
                (sol.field[grid.index(ip, j)] - sol.field[grid.index(im, j)]) / (2.0 * grid.hx());
            const double gy =
                (sol.field[grid.index(i, jp)] - sol.field[grid.index(i, jm)]) / (2.0 * grid.hy());
            const double grad2 = gx * gx + gy * gy;
            const double f = sol.field[grid.index(i, j)];
            // Normalized so that the node sum reproduces the topological
            // energy t N (flat) resp. b alpha + (pi/2)(N0+N1) (sphere): the
            // summed equation fixes the overall scale of the functional.
            if (sol.model == FieldModel::C) {
                const double dev = sol.t_real * (safe_exp(f) - 1.0);
                density[grid.index(i, j)] =
                    a2 * dev * dev + sol.t_real / (4.0 * kPi) * safe_exp(f) * grad2;
            } else {
                const double mu = sol.t_real - kPi * sigmoid(f);
                density[grid.index(i, j)] =
                    a2 * mu * mu + 0.25 * sigmoid(f) * sigmoid(-f) * grad2;
            }
        }
    }
    return density;
}

double total_energy(const FieldSolution& sol) {
    if (!sol.converged) throw InvalidInput("total_energy needs a converged solution");
    std::vector<double> density = energy_density(sol);
    double sum = 0;
    for (double v : density) sum += v;
    return sum * sol.grid.cell();
}

double flux_fraction(const FieldSolution& sol, double radius) {
    if (!sol.converged) throw InvalidInput("flux_fraction needs a converged solution");
    if (!(radius > 0)) throw InvalidInput("radius must be positive");
    std::vector<double> mu = moment_density(sol);
    const double a2 = sol.coupling_a * sol.coupling_a;
    std::vector<PointSource> sources = sol.vortices;
    sources.insert(sources.end(), sol.antivortices.begin(), sol.antivortices.end());
    double total = 0, near = 0;
    for (int j = 0; j < sol.grid.ny; ++j) {
        for (int i = 0; i < sol.grid.nx; ++i) {
            const double flux = a2 * std::abs(mu[sol.grid.index(i, j)]);
            total += flux;
            for (const auto& s : sources) {
                if (sol.grid.node_distance(i, j, s.i, s.j) <= radius) {
                    near += flux;
                    break;
                }
            }
        }
    }
    if (total == 0) return 0;
    return near / total;
}

}  // namespace vortex
