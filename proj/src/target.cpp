#include "vortex/target.hpp"

#include <numeric>

namespace vortex {

namespace {

void check_weights(const IMat& c, const RVec& t) {
    const int n = static_cast<int>(c.size());
    if (n < 1) throw InvalidInput("weight matrix must be nonempty");
    for (const IVec& row : c)
        if (static_cast<int>(row.size()) != n) throw InvalidInput("weight matrix must be square");
    if (static_cast<int>(t.size()) != n)
        throw InvalidInput("moment-map constant has wrong dimension");
    if (det_integer(c) != 1) throw InvalidInput("weight matrix must have determinant 1");
}

}  // namespace

int target_rank(const TargetModel& model) {
    return std::visit(
        [](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ToricModel>)
                return m.delta.dim();
            else
                return static_cast<int>(m.weights.size());
        },
        model);
}

void validate(const TargetModel& model) {
    if (const auto* cn = std::get_if<CnModel>(&model)) {
        check_weights(cn->weights, cn->shift);
    } else if (const auto* cpn = std::get_if<CPnModel>(&model)) {
        check_weights(cpn->weights, cpn->shift);
    } else {
        const auto& toric = std::get<ToricModel>(model);
        if (!toric.delta.is_delzant().delzant)
            throw InvalidInput("toric target polytope is not Delzant");
    }
}

std::vector<double> moment_cn(const CnModel& model, std::span<const std::complex<double>> z) {
    const int n = static_cast<int>(model.weights.size());
    if (static_cast<int>(z.size()) != n) throw InvalidInput("moment_cn: point has wrong dimension");
    std::vector<double> mu(n);
    for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += static_cast<double>(model.weights[j][k]) * std::norm(z[j]);
        mu[k] = to_double(model.shift[k]) - s;
    }
    return mu;
}

MomentCone image_cn(const CnModel& model) {
    const int n = static_cast<int>(model.weights.size());
    MomentCone cone;
    cone.dim = n;
    cone.apex = model.shift;
    IMat cinv = inverse_unimodular(model.weights);
    for (int k = 0; k < n; ++k) {
        IVec gen(n);
        for (int j = 0; j < n; ++j) gen[j] = -model.weights[k][j];
        cone.generators.push_back(primitive_vector(gen));
        IVec normal(n);
        for (int j = 0; j < n; ++j) normal[j] = cinv[j][k];  // C^{-1} e_k
        normal = primitive_vector(normal);
        Facet f;
        f.offset = dot(normal, model.shift);
        f.normal = std::move(normal);
        cone.facets.push_back(std::move(f));
    }
    return cone;
}

FaceLocation MomentCone::locate(std::span<const double> c, double eps) const {
    if (static_cast<int>(c.size()) != dim) throw InvalidInput("cone locate: dimension mismatch");
    if (eps <= 0) throw InvalidInput("cone locate: eps must be positive");
    return locate_halfspaces(facets, dim, c, eps);
}

FaceLocation MomentCone::locate_exact(const RVec& c) const {
    FaceLocation loc;
    std::vector<int> tight;
    for (int j = 0; j < static_cast<int>(facets.size()); ++j) {
        Rat g = dot(facets[j].normal, c) - facets[j].offset;
        if (g > 0) {
            loc.status = FaceLocation::Status::exterior;
            loc.face_dim = -1;
            return loc;
        }
        if (g == 0) tight.push_back(j);
    }
    if (tight.empty()) {
        loc.status = FaceLocation::Status::interior;
        loc.face_dim = dim;
        return loc;
    }
    loc.status = FaceLocation::Status::boundary;
    loc.tight = tight;
    IMat rows;
    for (int j : tight) rows.push_back(facets[j].normal);
    loc.face_dim = dim - rank_integer(rows);
    return loc;
}

std::vector<double> moment_cpn(const CPnModel& model, std::span<const std::complex<double>> z) {
    const int n = static_cast<int>(model.weights.size());
    if (static_cast<int>(z.size()) != n + 1)
        throw InvalidInput("moment_cpn: expected n+1 homogeneous coordinates");
    double total = 0;
    for (const auto& zi : z) total += std::norm(zi);
    if (total == 0) throw InvalidInput("moment_cpn: zero homogeneous vector");
    std::vector<double> mu(n);
    for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 1; j <= n; ++j)
            s += static_cast<double>(model.weights[j - 1][k]) * std::norm(z[j]);
        mu[k] = to_double(model.shift[k]) - s / total;
    }
    return mu;
}

LatticePolytope image_polytope(const TargetModel& model) {
    if (std::holds_alternative<CnModel>(model))
        throw InvalidInput("flat model has an unbounded image; use image_cn");
    if (const auto* toric = std::get_if<ToricModel>(&model)) return toric->delta;

    const auto& cpn = std::get<CPnModel>(model);
    const int n = static_cast<int>(cpn.weights.size());
    IMat cinv = inverse_unimodular(cpn.weights);
    std::vector<IVec> normals;
    RVec offsets;
    // facet a = 0 first (normal C^{-1} e0 with e0 = -(e1+...+en)), then a = 1..n
    IVec n0(n, 0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) n0[j] -= cinv[j][k];
    Int g0 = 0;
    for (Int x : n0) g0 = std::gcd(g0, x);
    n0 = primitive_vector(n0);
    offsets.push_back(dot(n0, cpn.shift) + Rat(1, g0));
    normals.push_back(std::move(n0));
    for (int k = 0; k < n; ++k) {
        IVec nk(n);
        for (int j = 0; j < n; ++j) nk[j] = cinv[j][k];
        nk = primitive_vector(nk);
        offsets.push_back(dot(nk, cpn.shift));
        normals.push_back(std::move(nk));
    }
    return LatticePolytope::from_halfspaces(normals, offsets);
}

double lambda_limit(const LatticePolytope& q, std::span<const double> v) {
    return q.support_value(v);
}

}  // namespace vortex
