#include "vortex/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vortex::io {

namespace {

std::string format_double(double x) {
    if (!std::isfinite(x)) throw InternalError("non-finite value in JSON output");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void dump_rec(const ordered_json& v, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (v.type()) {
        case nlohmann::detail::value_t::object: {
            if (v.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += ordered_json(it.key()).dump();
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::detail::value_t::array: {
            if (v.empty()) { out += "[]"; return; }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                out += pad_in;
                dump_rec(v[i], out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::detail::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

Int get_int(const ordered_json& j, const char* what) {
    if (!j.is_number_integer()) throw InvalidInput(std::string("expected an integer for ") + what);
    return j.get<Int>();
}

double get_number(const ordered_json& j, const char* what) {
    if (!j.is_number()) throw InvalidInput(std::string("expected a number for ") + what);
    return j.get<double>();
}

Rat get_rational(const ordered_json& j, const char* what) {
    if (j.is_number_integer()) return Rat(j.get<Int>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InvalidInput(std::string("expected \"p/q\" or integer for ") + what);
}

ordered_json rational_strings(const RVec& v) {
    ordered_json out = ordered_json::array();
    for (const Rat& x : v) out.push_back(format_rational(x));
    return out;
}

ordered_json int_array(const IVec& v) {
    ordered_json out = ordered_json::array();
    for (Int x : v) out.push_back(x);
    return out;
}

ordered_json pattern_array(const std::set<std::vector<int>>& patterns) {
    ordered_json out = ordered_json::array();
    for (const auto& p : patterns) {
        ordered_json row = ordered_json::array();
        for (int x : p) row.push_back(x);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

std::string dump_deterministic(const ordered_json& value, int indent) {
    std::string out;
    dump_rec(value, out, indent, 0);
    out += "\n";
    return out;
}

LatticePolytope parse_polytope(const ordered_json& j) {
    if (!j.is_object() || !j.contains("normals") || !j.contains("offsets"))
        throw InvalidInput("polytope object needs \"normals\" and \"offsets\"");
    std::vector<IVec> normals;
    for (const auto& row : j.at("normals")) {
        IVec n;
        for (const auto& x : row) n.push_back(get_int(x, "normal entry"));
        normals.push_back(std::move(n));
    }
    RVec offsets;
    for (const auto& x : j.at("offsets")) offsets.push_back(get_rational(x, "offset"));
    return LatticePolytope::from_halfspaces(normals, offsets);
}

ordered_json polytope_report(const LatticePolytope& poly) {
    ordered_json out;
    out["delzant"] = poly.is_delzant().delzant;
    ordered_json verts = ordered_json::array();
    for (const RVec& v : poly.vertices()) verts.push_back(rational_strings(v));
    out["vertices"] = std::move(verts);
    out["volume"] = format_rational(poly.volume());
    out["barycentre"] = rational_strings(poly.barycentre());
    out["patterns"] = pattern_array(poly.nonempty_facet_intersections());
    return out;
}

ordered_json delzant_report(const DelzantData& data) {
    ordered_json out;
    ordered_json beta = ordered_json::array();
    for (const IVec& row : data.beta) beta.push_back(int_array(row));
    out["beta"] = std::move(beta);
    ordered_json kernel = ordered_json::array();
    for (const IVec& row : data.kernel_basis) kernel.push_back(int_array(row));
    out["kernel"] = std::move(kernel);
    out["surjective"] = data.surjective_on_lattice;
    out["patterns"] = pattern_array(data.admissible_patterns);
    return out;
}

TargetModel parse_target(const ordered_json& j) {
    if (!j.is_object() || !j.contains("kind")) throw InvalidInput("target needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "toric") {
        if (!j.contains("polytope")) throw InvalidInput("toric target needs a \"polytope\"");
        ToricModel model{parse_polytope(j.at("polytope"))};
        validate(TargetModel(model));
        return model;
    }
    if (!j.contains("C")) throw InvalidInput("flat/projective target needs \"C\"");
    IMat c;
    for (const auto& row : j.at("C")) {
        IVec r;
        for (const auto& x : row) r.push_back(get_int(x, "C entry"));
        c.push_back(std::move(r));
    }
    RVec t(c.size(), Rat(0));
    if (j.contains("t")) {
        t.clear();
        for (const auto& x : j.at("t")) t.push_back(get_rational(x, "t entry"));
    }
    TargetModel model;
    if (kind == "Cn")
        model = CnModel{std::move(c), std::move(t)};
    else if (kind == "CPn")
        model = CPnModel{std::move(c), std::move(t)};
    else
        throw InvalidInput("unknown target kind: " + kind);
    validate(model);
    return model;
}

BaseBundleData parse_base(const ordered_json& j) {
    if (!j.is_object()) throw InvalidInput("base data must be an object");
    const double vol = get_number(j.at("vol_M"), "vol_M");
    const double a = get_number(j.at("a"), "a");
    std::optional<int> genus;
    if (j.contains("genus")) genus = static_cast<int>(get_int(j.at("genus"), "genus"));
    if (j.contains("alpha")) {
        IVec alpha;
        for (const auto& x : j.at("alpha")) alpha.push_back(get_int(x, "alpha entry"));
        return BaseBundleData::for_surface(std::move(alpha), vol, a, genus);
    }
    if (!j.contains("pairing_deg") || !j.contains("pairing_self"))
        throw InvalidInput("base data needs \"alpha\" or both pairing vectors");
    std::vector<double> deg, self;
    for (const auto& x : j.at("pairing_deg")) deg.push_back(get_number(x, "pairing_deg"));
    for (const auto& x : j.at("pairing_self")) self.push_back(get_number(x, "pairing_self"));
    return BaseBundleData::general(std::move(deg), std::move(self), vol, a);
}

ordered_json classify_report(const ModuliDescription& desc, const BaseBundleData& data) {
    ordered_json out;
    ordered_json c_real = ordered_json::array();
    for (double x : data.c_real()) c_real.push_back(x);
    out["c"] = std::move(c_real);
    ordered_json c_pi = ordered_json::array();
    const bool zero_deg =
        std::all_of(data.pairing_deg.begin(), data.pairing_deg.end(), [](double x) { return x == 0; });
    for (double x : desc.verdict.c_pi) {
        if (zero_deg)
            c_pi.push_back("0/1");
        else
            c_pi.push_back(x);
    }
    out["c_pi_units"] = std::move(c_pi);
    out["verdict"] = to_string(desc.verdict.location.status);
    ordered_json face;
    face["dim"] = desc.verdict.location.face_dim;
    ordered_json tight = ordered_json::array();
    for (int t : desc.verdict.location.tight) tight.push_back(t);
    face["tight"] = std::move(tight);
    face["message"] = desc.verdict.message;
    face["caveat"] = desc.verdict.boundary_caveat;
    out["face"] = std::move(face);
    out["completeness"] = desc.completeness;
    if (!desc.energy_note.empty()) out["note"] = desc.energy_note;
    ordered_json comps = ordered_json::array();
    for (const ModuliComponent& c : desc.components) {
        ordered_json jc;
        jc["degrees"] = int_array(c.degrees);
        jc["dim"] = c.complex_dim;
        if (c.energy)
            jc["energy"] = *c.energy;
        else
            jc["energy"] = nullptr;
        ordered_json cons = ordered_json::array();
        for (const auto& s : c.constraints) {
            ordered_json row = ordered_json::array();
            for (int x : s) row.push_back(x);
            cons.push_back(std::move(row));
        }
        jc["constraints"] = std::move(cons);
        comps.push_back(std::move(jc));
    }
    out["components"] = std::move(comps);
    return out;
}

double parse_t_real(const ordered_json& j) {
    if (j.contains("t_pi")) return kPi * to_double(get_rational(j.at("t_pi"), "t_pi"));
    if (j.contains("t_real")) return get_number(j.at("t_real"), "t_real");
    if (j.contains("t")) return get_number(j.at("t"), "t");
    throw InvalidInput("expected \"t\", \"t_real\" or \"t_pi\"");
}

SolveRequest parse_solve_request(const ordered_json& j) {
    if (!j.is_object()) throw InvalidInput("solve request must be an object");
    SolveRequest req;
    const std::string model = j.at("model").get<std::string>();
    if (model == "C")
        req.model = FieldModel::C;
    else if (model == "CP1")
        req.model = FieldModel::CP1;
    else
        throw InvalidInput("unknown model: " + model);
    req.t = parse_t_real(j);
    req.a = get_number(j.at("a"), "a");
    const auto& torus = j.at("torus");
    const auto& grid = j.at("grid");
    req.grid = TorusGrid(get_number(torus.at("Lx"), "Lx"), get_number(torus.at("Ly"), "Ly"),
                         static_cast<int>(get_int(grid.at(0), "nx")),
                         static_cast<int>(get_int(grid.at(1), "ny")));
    auto parse_sources = [&](const char* key) {
        std::vector<PointSource> out;
        if (!j.contains(key)) return out;
        for (const auto& row : j.at(key)) {
            if (!row.is_array() || row.size() != 3)
                throw InvalidInput("sources are [x, y, multiplicity] triples");
            out.push_back(snap_source(req.grid, get_number(row[0], "x"), get_number(row[1], "y"),
                                      get_int(row[2], "multiplicity")));
        }
        return out;
    };
    req.vortices = parse_sources("vortices");
    req.antivortices = parse_sources("antivortices");
    if (req.model == FieldModel::C && !req.antivortices.empty())
        throw InvalidInput("flat-target model takes no antivortices");
    if (j.contains("newton")) {
        const auto& nw = j.at("newton");
        if (nw.contains("tol")) req.newton.tol = get_number(nw.at("tol"), "tol");
        if (nw.contains("max_iter"))
            req.newton.max_iter = static_cast<int>(get_int(nw.at("max_iter"), "max_iter"));
    }
    return req;
}

ordered_json solve_report(const FieldSolution& sol, std::optional<double> predicted_energy) {
    ordered_json out;
    out["converged"] = sol.converged;
    out["iterations"] = sol.iterations;
    out["residual"] = sol.residual_norm;
    if (sol.converged) {
        out["moment_mean_error"] = std::abs(moment_mean(sol) - sol.c_real());
        out["energy"] = total_energy(sol);
    } else {
        out["moment_mean_error"] = nullptr;
        out["energy"] = nullptr;
        ordered_json hist = ordered_json::array();
        for (double r : sol.residual_history) hist.push_back(r);
        out["residual_history"] = std::move(hist);
    }
    if (predicted_energy)
        out["predicted_energy"] = *predicted_energy;
    else
        out["predicted_energy"] = nullptr;
    return out;
}

std::string field_csv(const FieldSolution& sol) {
    std::vector<double> mu = moment_density(sol);
    std::vector<double> en = energy_density(sol);
    std::string out = "i,j,x,y,field,moment_density,energy_density\n";
    char buf[256];
    for (int j = 0; j < sol.grid.ny; ++j) {
        for (int i = 0; i < sol.grid.nx; ++i) {
            const int k = sol.grid.index(i, j);
            std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j,
                          sol.grid.x(i), sol.grid.y(j), sol.field[k], mu[k], en[k]);
            out += buf;
        }
    }
    return out;
}

}  // namespace vortex::io
