#pragma once

#include "vortex/polytope.hpp"

#include <complex>
#include <variant>

namespace vortex {

// Torus weight conventions: C is the integer weight matrix of the action
// (unimodular), t the moment-map constant stored in pi-normalized units.
// e0 denotes -(e1 + ... + en) throughout.

struct CnModel {
    IMat weights;  // C, n x n, det = 1
    RVec shift;    // t, pi-units
};

struct CPnModel {
    IMat weights;  // C, n x n, det = 1
    RVec shift;    // t, pi-units
};

struct ToricModel {
    LatticePolytope delta;  // must pass is_delzant
};

using TargetModel = std::variant<CnModel, CPnModel, ToricModel>;

/// Torus rank of the model (and the dimension of its moment image).
int target_rank(const TargetModel& model);

/// Throws InvalidInput unless det C = 1, sizes agree, and (for toric targets)
/// the polytope is Delzant.
void validate(const TargetModel& model);

/// Unbounded moment image t - pi C^T (R>=0)^n of the flat model, stored as
/// the halfspace system (C^{-1} e_k) . y <= (C^{-1} e_k) . t in pi-units.
struct MomentCone {
    RVec apex;           // t
    IMat generators;     // rows: -row_k(C), primitive
    std::vector<Facet> facets;
    int dim = 0;

    FaceLocation locate(std::span<const double> c, double eps = 1e-9) const;
    FaceLocation locate_exact(const RVec& c) const;
};

/// Moment map of the flat model in pi-units: t_k - sum_j C_jk |z_j|^2.
std::vector<double> moment_cn(const CnModel& model, std::span<const std::complex<double>> z);

MomentCone image_cn(const CnModel& model);

/// Moment map of the projective model in pi-units:
/// t_k - (sum_{j>=1} C_jk |z_j|^2) / (sum_{i>=0} |z_i|^2), z homogeneous.
std::vector<double> moment_cpn(const CPnModel& model, std::span<const std::complex<double>> z);

/// Bounded moment image. Projective model: the simplex with vertices
/// {t} u {t - row_k(C)} and facet normals primitive(C^{-1} e_a), a = 0..n,
/// in facet order a = 0, 1, ..., n. Toric model: delta itself.
LatticePolytope image_polytope(const TargetModel& model);

/// Asymptotic value of the gradient flow of v . mu: the support function of
/// the orbit-image polytope.
double lambda_limit(const LatticePolytope& q, std::span<const double> v);

}  // namespace vortex
