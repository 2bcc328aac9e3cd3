#include "vortex/delzant.hpp"

#include <algorithm>
#include <sstream>

namespace vortex {

namespace {

void fill_algebra(DelzantData& data) {
    data.kernel_basis = integer_kernel_basis(data.beta);
    IVec invariants = smith_invariants(data.beta);
    data.surjective_on_lattice =
        static_cast<int>(invariants.size()) == data.rank() &&
        std::all_of(invariants.begin(), invariants.end(), [](Int x) { return x == 1; });
}

}  // namespace

DelzantData DelzantData::build(const LatticePolytope& delta) {
    DelzantCertificate cert = delta.is_delzant();
    if (!cert.delzant) {
        std::ostringstream msg;
        msg << "polytope is not Delzant;";
        for (const auto& e : cert.entries)
            if (e.edge_det != 1 && e.edge_det != -1)
                msg << " vertex " << e.vertex << ": tight facets " << e.tight_count
                    << ", edge determinant " << e.edge_det << ";";
        throw InvalidInput(msg.str());
    }
    const int n = delta.dim();
    const int d = static_cast<int>(delta.facets().size());
    DelzantData data;
    data.beta.assign(n, IVec(d, 0));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i) data.beta[i][j] = delta.facets()[j].normal[i];
    fill_algebra(data);
    data.admissible_patterns = delta.nonempty_facet_intersections();
    return data;
}

DelzantData DelzantData::from_matrix(IMat beta) {
    DelzantData data;
    data.beta = std::move(beta);
    fill_algebra(data);
    data.admissible_patterns.insert(std::vector<int>{});
    return data;
}

IVec DelzantData::pushforward_degrees(const IVec& degrees) const {
    if (static_cast<int>(degrees.size()) != facet_count())
        throw InvalidInput("pushforward_degrees: wrong length");
    return mat_vec(beta, degrees);
}

DelzantData::Lift DelzantData::lift_degrees(const IVec& target) const {
    if (static_cast<int>(target.size()) != rank())
        throw InvalidInput("lift_degrees: wrong length");
    auto x = solve_integer(beta, target);
    if (!x) {
        if (!surjective_on_lattice)
            throw NoLift("facet map is not surjective on the lattice; no integer lift");
        throw NoLift("degree vector has no integer lift");
    }
    Lift lift;
    lift.particular = std::move(*x);
    lift.fiber_basis = kernel_basis;
    return lift;
}

}  // namespace vortex
