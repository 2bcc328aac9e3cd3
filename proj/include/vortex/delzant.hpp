#pragma once

#include "vortex/polytope.hpp"

namespace vortex {

/// Integer-linear-algebra layer of the Delzant construction: the facet map
/// beta (columns = primitive facet normals), its kernel lattice, lattice
/// surjectivity, and the admissible zero patterns of the quotient charts.
struct DelzantData {
    IMat beta;              // n x d, column j = normal of facet j
    IMat kernel_basis;      // d-n integer d-vectors spanning ker beta over Z
    bool surjective_on_lattice = false;
    std::set<std::vector<int>> admissible_patterns;

    int rank() const { return static_cast<int>(beta.size()); }
    int facet_count() const { return beta.empty() ? 0 : static_cast<int>(beta[0].size()); }

    /// Builds from a Delzant polytope; rejects non-Delzant input with the
    /// failing vertex certificate in the message.
    static DelzantData build(const LatticePolytope& delta);

    /// Test seam: wraps a raw facet matrix (no polytope, no patterns).
    static DelzantData from_matrix(IMat beta);

    /// beta . degrees — the degree vector of the quotient torus bundle.
    IVec pushforward_degrees(const IVec& degrees) const;

    struct Lift {
        IVec particular;   // one solution x of beta x = target
        IMat fiber_basis;  // full solution set is particular + Z-span of these
    };
    /// Integer solution of beta x = target with the Hermite particular
    /// solution; throws NoLift when target is not in beta(Z^d).
    Lift lift_degrees(const IVec& target) const;
};

}  // namespace vortex
