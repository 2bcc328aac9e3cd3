#pragma once

#include "vortex/moduli.hpp"
#include "vortex/solver.hpp"

#include <json.hpp>

namespace vortex::io {

using ordered_json = nlohmann::ordered_json;

/// Serializes with insertion-ordered keys and doubles printed with 17
/// significant digits, so repeated runs are byte-identical.
std::string dump_deterministic(const ordered_json& value, int indent = 2);

// ---- polytope schema: {"normals": [[int]], "offsets": ["p/q"]} ----
LatticePolytope parse_polytope(const ordered_json& j);
ordered_json polytope_report(const LatticePolytope& poly);

// ---- delzant report: {"beta","kernel","surjective","patterns"} ----
ordered_json delzant_report(const DelzantData& data);

// ---- target schema: {"kind","C","t"} or {"kind":"toric","polytope":{...}} ----
TargetModel parse_target(const ordered_json& j);

// ---- classify: input {"target","base","cap"?}; base holds n/vol_M/a plus
// either integer "alpha" (surface) or pairing vectors ----
BaseBundleData parse_base(const ordered_json& j);
ordered_json classify_report(const ModuliDescription& desc, const BaseBundleData& data);

// ---- solve schema (see README) ----
struct SolveRequest {
    FieldModel model = FieldModel::C;
    double t = 0;  // real units
    double a = 0;
    TorusGrid grid;
    std::vector<PointSource> vortices;
    std::vector<PointSource> antivortices;
    NewtonOptions newton;
};
SolveRequest parse_solve_request(const ordered_json& j);
ordered_json solve_report(const FieldSolution& sol, std::optional<double> predicted_energy);
std::string field_csv(const FieldSolution& sol);

/// Accepts {"t_real": float} or {"t_pi": "p/q"}; returns real units.
double parse_t_real(const ordered_json& j);

}  // namespace vortex::io
