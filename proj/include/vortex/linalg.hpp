#pragma once

#include "vortex/rational.hpp"

#include <optional>

namespace vortex {

// ---- exact rational dense algebra (systems here are at most ~5x5) ----

Rat dot(const RVec& a, const RVec& b);
Rat dot(const IVec& a, const RVec& b);
double dot(const IVec& a, const std::vector<double>& b);
double dot(const std::vector<double>& a, const std::vector<double>& b);

/// Solves A x = b exactly. Returns nullopt when A is singular.
std::optional<RVec> solve_rational(RMat a, RVec b);

/// Rank over the rationals.
int rank_rational(RMat a);
int rank_integer(const IMat& a);

Rat det_rational(RMat a);
Int det_integer(const IMat& a);

/// Rank of {rows[i] - rows[0]}; 0 for a single point, -1 for no points.
int affine_rank(const std::vector<RVec>& points);

/// One rational kernel vector of a rank-(n-1) system of n-dim rows,
/// rescaled to a primitive integer vector. Throws if the rank is not n-1.
IVec kernel_direction(const IMat& rows, int n);

/// v / gcd(|v_i|); throws InvalidInput on the zero vector.
IVec primitive_vector(IVec v);

/// Inverse of a unimodular integer matrix (throws unless det = +-1).
IMat inverse_unimodular(const IMat& c);

IVec mat_vec(const IMat& a, const IVec& x);
std::vector<double> mat_vec(const IMat& a, const std::vector<double>& x);

// ---- integer normal forms ----

/// Column-style Hermite normal form: A * U = H with U unimodular, pivots
/// positive, entries left of each pivot reduced into [0, pivot).
struct HermiteResult {
    IMat h;                       // n x d
    IMat u;                       // d x d unimodular
    std::vector<std::pair<int, int>> pivots;  // (row, column) in order
    int rank = 0;
};
HermiteResult hermite_columns(const IMat& a);

/// Basis of ker(A) over the integers (columns of U past the pivot block).
IMat integer_kernel_basis(const IMat& a);

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
IVec smith_invariants(IMat a);

/// One integer solution of A x = b via the Hermite particular solution,
/// or nullopt when b is not in A(Z^d).
std::optional<IVec> solve_integer(const IMat& a, const IVec& b);

}  // namespace vortex
