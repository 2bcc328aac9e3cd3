#include "vortex/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vortex {

namespace {

std::string factor_string(Int n) {
    std::ostringstream out;
    out << "S^" << n << " M";
    return out.str();
}

Int rat_floor(const Rat& x) {
    boost::multiprecision::mpz_int n = numerator(x), d = denominator(x);  // d > 0
    boost::multiprecision::mpz_int quot = n / d;
    if (n % d != 0 && n < 0) quot -= 1;
    return quot.convert_to<Int>();
}

Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

/// The polytope of a projective-space target: a unimodular simplex whose
/// facet map has kernel Z(1,...,1).
bool projective_shaped(const LatticePolytope& delta) {
    const int n = delta.dim();
    const int d = static_cast<int>(delta.facets().size());
    if (d != n + 1) return false;
    IMat beta(n, IVec(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i) beta[i][j] = delta.facets()[j].normal[i];
    IMat kernel = integer_kernel_basis(beta);
    if (kernel.size() != 1) return false;
    const IVec& k = kernel[0];
    if (std::abs(k[0]) != 1) return false;
    for (Int x : k)
        if (x != k[0]) return false;
    Rat fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    return delta.volume() == 1 / fact;
}

}  // namespace

BaseBundleData BaseBundleData::for_surface(IVec alpha, double base_volume, double coupling_a,
                                           std::optional<int> genus) {
    BaseBundleData data;
    data.n = static_cast<int>(alpha.size());
    data.base_volume = base_volume;
    data.coupling_a = coupling_a;
    data.pairing_deg.assign(alpha.begin(), alpha.end());
    data.pairing_self.assign(alpha.size(), 0.0);
    data.surface = true;
    data.alpha = std::move(alpha);
    data.genus = genus;
    data.check();
    return data;
}

BaseBundleData BaseBundleData::general(std::vector<double> pairing_deg,
                                       std::vector<double> pairing_self, double base_volume,
                                       double coupling_a) {
    BaseBundleData data;
    data.n = static_cast<int>(pairing_deg.size());
    data.base_volume = base_volume;
    data.coupling_a = coupling_a;
    data.pairing_deg = std::move(pairing_deg);
    data.pairing_self = std::move(pairing_self);
    data.surface = false;
    data.check();
    return data;
}

void BaseBundleData::check() const {
    if (n < 1) throw InvalidInput("torus rank must be >= 1");
    if (!(base_volume > 0)) throw InvalidInput("base volume must be positive");
    if (!(coupling_a > 0)) throw InvalidInput("coupling must be positive");
    if (static_cast<int>(pairing_deg.size()) != n ||
        static_cast<int>(pairing_self.size()) != n)
        throw InvalidInput("pairing vectors must have length n");
    if (surface) {
        if (static_cast<int>(alpha.size()) != n)
            throw InvalidInput("surface degrees must have length n");
        for (int k = 0; k < n; ++k) {
            if (pairing_self[k] != 0.0)
                throw InvalidInput("surface base forces zero self pairings");
            if (pairing_deg[k] != static_cast<double>(alpha[k]))
                throw InvalidInput("surface degree pairings must equal alpha");
        }
    }
}

std::vector<double> BaseBundleData::c_real() const {
    std::vector<double> c(pairing_deg);
    const double scale = coupling_a * coupling_a * base_volume;
    for (double& x : c) x /= scale;
    return c;
}

std::vector<double> BaseBundleData::c_pi() const {
    std::vector<double> c = c_real();
    for (double& x : c) x /= kPi;
    return c;
}

ExistenceVerdict existence_verdict(const TargetModel& target, const BaseBundleData& data,
                                   double eps) {
    validate(target);
    data.check();
    if (target_rank(target) != data.n)
        throw InvalidInput("target rank does not match bundle data");
    ExistenceVerdict verdict;
    verdict.c_pi = data.c_pi();
    if (const auto* cn = std::get_if<CnModel>(&target)) {
        verdict.location = image_cn(*cn).locate(verdict.c_pi, eps);
    } else {
        verdict.location = image_polytope(target).locate(verdict.c_pi, eps);
    }
    switch (verdict.location.status) {
        case FaceLocation::Status::exterior:
            verdict.message = "no solutions: c(a,P,M) lies outside the moment image";
            break;
        case FaceLocation::Status::interior:
            verdict.message = "";
            break;
        case FaceLocation::Status::boundary: {
            std::ostringstream msg;
            msg << "sections confined to mu^-1(closure of the open face with tight facets {";
            for (std::size_t i = 0; i < verdict.location.tight.size(); ++i)
                msg << (i ? "," : "") << verdict.location.tight[i];
            msg << "}), not contained in any of its proper closed faces";
            verdict.message = msg.str();
            verdict.boundary_caveat = true;
            break;
        }
    }
    return verdict;
}

namespace {

void require_interior(const TargetModel& target, const BaseBundleData& data) {
    if (!data.surface) throw InvalidInput("classification requires a surface base");
    ExistenceVerdict v = existence_verdict(target, data);
    if (!v.location.interior())
        throw InvalidInput("classification requires c(a,P,M) interior to the moment image");
}

}  // namespace

std::vector<ModuliComponent> classify_cn(const CnModel& target, const BaseBundleData& data) {
    require_interior(TargetModel(target), data);
    IVec degrees = mat_vec(target.weights, data.alpha);
    for (Int d : degrees)
        if (d < 0) return {};
    ModuliComponent comp;
    comp.degrees = degrees;
    comp.complex_dim = 0;
    for (Int d : degrees) {
        comp.complex_dim += d;
        comp.factors.push_back(factor_string(d));
    }
    comp.energy = energy_topological(TargetModel(target), data);
    return {std::move(comp)};
}

std::vector<ModuliComponent> classify_cpn(const CPnModel& target, const BaseBundleData& data,
                                          Int cap) {
    if (cap < 0) throw InvalidInput("cap must be >= 0");
    require_interior(TargetModel(target), data);
    const int n = data.n;
    IVec rel = mat_vec(target.weights, data.alpha);  // N_l - N_0
    Int n0_min = 0;
    for (Int k : rel) n0_min = std::max(n0_min, -k);
    std::vector<int> full(n + 1);
    for (int j = 0; j <= n; ++j) full[j] = j;
    std::vector<ModuliComponent> out;
    for (Int n0 = n0_min;; ++n0) {
        IVec degrees(n + 1);
        degrees[0] = n0;
        Int total = n0;
        for (int l = 1; l <= n; ++l) {
            degrees[l] = n0 + rel[l - 1];
            total += degrees[l];
        }
        if (total > cap) break;
        ModuliComponent comp;
        comp.degrees = degrees;
        comp.complex_dim = total;
        for (Int d : degrees) comp.factors.push_back(factor_string(d));
        comp.energy = energy_topological(TargetModel(target), data, degrees);
        comp.constraints = {full};
        out.push_back(std::move(comp));
    }
    return out;
}

namespace {

std::vector<std::vector<int>> minimal_disjoint_constraints(const LatticePolytope& delta) {
    auto admissible = delta.nonempty_facet_intersections();
    const int d = static_cast<int>(delta.facets().size());
    const int n = delta.dim();
    std::vector<std::vector<int>> minimal;
    // By Helly's theorem in R^n a minimal family of facets with empty common
    // intersection has at most n+1 members.
    const int max_size = std::min(d, n + 1);
    std::vector<int> subset;
    auto recurse = [&](auto&& self, int start, int size) -> void {
        if (static_cast<int>(subset.size()) == size) {
            if (admissible.count(subset)) return;
            for (std::size_t skip = 0; skip < subset.size(); ++skip) {
                std::vector<int> sub;
                for (std::size_t i = 0; i < subset.size(); ++i)
                    if (i != skip) sub.push_back(subset[i]);
                if (!admissible.count(sub)) return;  // not minimal
            }
            minimal.push_back(subset);
            return;
        }
        for (int j = start; j < d; ++j) {
            subset.push_back(j);
            self(self, j + 1, size);
            subset.pop_back();
        }
    };
    for (int size = 2; size <= max_size; ++size) recurse(recurse, 0, size);
    return minimal;
}

}  // namespace

std::vector<ModuliComponent> classify_toric(const ToricModel& target, const BaseBundleData& data,
                                            Int cap) {
    if (cap < 0) throw InvalidInput("cap must be >= 0");
    require_interior(TargetModel(target), data);
    DelzantData delzant = DelzantData::build(target.delta);
    DelzantData::Lift lift;
    try {
        lift = delzant.lift_degrees(data.alpha);
    } catch (const NoLift&) {
        return {};
    }
    const int d = delzant.facet_count();
    const int m = d - delzant.rank();
    const IVec& x0 = lift.particular;

    std::vector<IVec> candidates;
    if (m == 0) {
        candidates.push_back(x0);
    } else {
        // Pick m rows of the kernel matrix forming an invertible block, then
        // bound the kernel coefficients from 0 <= N_j <= cap.
        RMat kernel_cols(d, RVec(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < d; ++j) kernel_cols[j][i] = lift.fiber_basis[i][j];
        std::vector<int> block_rows;
        {
            RMat work;
            for (int j = 0; j < d && static_cast<int>(block_rows.size()) < m; ++j) {
                work.push_back(kernel_cols[j]);
                if (rank_rational(work) == static_cast<int>(work.size()))
                    block_rows.push_back(j);
                else
                    work.pop_back();
            }
            if (static_cast<int>(block_rows.size()) != m)
                throw InternalError("kernel basis lost rank");
        }
        RMat block(m, RVec(m));
        for (int r = 0; r < m; ++r) block[r] = kernel_cols[block_rows[r]];
        RMat inv(m, RVec(m));
        for (int col = 0; col < m; ++col) {
            RVec e(m, Rat(0));
            e[col] = 1;
            auto x = solve_rational(block, e);
            if (!x) throw InternalError("kernel block failed to invert");
            for (int r = 0; r < m; ++r) inv[r][col] = (*x)[r];
        }
        IVec lo(m), hi(m);
        for (int i = 0; i < m; ++i) {
            Rat lo_sum = 0, hi_sum = 0;
            for (int r = 0; r < m; ++r) {
                int j = block_rows[r];
                Rat at0 = inv[i][r] * (Rat(0) - x0[j]);
                Rat atc = inv[i][r] * (Rat(cap) - x0[j]);
                lo_sum += std::min(at0, atc);
                hi_sum += std::max(at0, atc);
            }
            lo[i] = rat_ceil(lo_sum);
            hi[i] = rat_floor(hi_sum);
        }
        IVec coeff(m);
        auto iterate = [&](auto&& self, int level) -> void {
            if (level == m) {
                IVec degrees = x0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < d; ++j) degrees[j] += coeff[i] * lift.fiber_basis[i][j];
                Int total = 0;
                for (Int x : degrees) {
                    if (x < 0) return;
                    total += x;
                }
                if (total <= cap) candidates.push_back(std::move(degrees));
                return;
            }
            for (Int c = lo[level]; c <= hi[level]; ++c) {
                coeff[level] = c;
                self(self, level + 1);
            }
        };
        iterate(iterate, 0);
    }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::vector<int>> constraints = minimal_disjoint_constraints(target.delta);
    const bool projective = projective_shaped(target.delta);
    std::vector<ModuliComponent> out;
    for (IVec& degrees : candidates) {
        if (m == 0) {
            Int total = 0;
            bool ok = true;
            for (Int x : degrees) {
                if (x < 0) ok = false;
                total += x;
            }
            if (!ok || total > cap) continue;
        }
        ModuliComponent comp;
        comp.complex_dim = 0;
        for (Int x : degrees) {
            comp.complex_dim += x;
            comp.factors.push_back(factor_string(x));
        }
        comp.constraints = constraints;
        if (projective)
            comp.energy = energy_topological(TargetModel(target), data, degrees);
        comp.degrees = std::move(degrees);
        out.push_back(std::move(comp));
    }
    return out;
}

ModuliDescription classify(const TargetModel& target, const BaseBundleData& data, Int cap,
                           double eps) {
    ModuliDescription desc;
    desc.verdict = existence_verdict(target, data, eps);
    desc.completeness = "complete";
    if (const auto* toric = std::get_if<ToricModel>(&target)) {
        if (!projective_shaped(toric->delta)) {
            desc.completeness = "conjectural";
            desc.energy_note = "energy: not derived in source";
        }
    }
    if (!desc.verdict.location.interior()) return desc;
    if (!data.surface) return desc;  // enumeration needs integer degrees
    if (const auto* cn = std::get_if<CnModel>(&target)) {
        desc.components = classify_cn(*cn, data);
    } else if (const auto* cpn = std::get_if<CPnModel>(&target)) {
        desc.components = classify_cpn(*cpn, data, cap);
    } else {
        const auto& toric = std::get<ToricModel>(target);
        desc.components = classify_toric(toric, data, cap);
        if (desc.components.empty()) {
            try {
                DelzantData::build(toric.delta).lift_degrees(data.alpha);
            } catch (const NoLift& err) {
                desc.energy_note = err.what();
            }
        }
    }
    return desc;
}

double energy_topological(const TargetModel& target, const BaseBundleData& data,
                          const std::optional<IVec>& degrees) {
    validate(target);
    data.check();
    const double a2 = data.coupling_a * data.coupling_a;

    if (const auto* cn = std::get_if<CnModel>(&target)) {
        double t = 0;
        for (int k = 0; k < data.n; ++k)
            t += kPi * to_double(cn->shift[k]) * data.pairing_deg[k] - data.pairing_self[k] / a2;
        return t;
    }

    const LatticePolytope delta = image_polytope(target);
    const int n = delta.dim();
    if (!projective_shaped(delta))
        throw InvalidInput("no topological energy formula for general toric targets");
    if (!degrees) throw InvalidInput("projective energy needs the degree multiplet");
    if (static_cast<int>(degrees->size()) != n + 1)
        throw InvalidInput("degree multiplet must have n+1 entries");
    if (data.surface && std::holds_alternative<CPnModel>(target)) {
        const auto& cpn = std::get<CPnModel>(target);
        IVec rel = mat_vec(cpn.weights, data.alpha);
        for (int l = 1; l <= n; ++l)
            if ((*degrees)[l] - (*degrees)[0] != rel[l - 1])
                throw InvalidInput("degree multiplet incompatible with the bundle degrees");
    }
    RVec b = delta.barycentre();
    double t = 0;
    for (int k = 0; k < n; ++k)
        t += kPi * to_double(b[k]) * data.pairing_deg[k] - data.pairing_self[k] / a2;
    Int total = 0;
    for (Int x : *degrees) total += x;
    t += kPi / (n + 1) * static_cast<double>(total);
    return t;
}

double stability_inequality(const LatticePolytope& q, const BaseBundleData& data,
                            std::span<const double> v) {
    data.check();
    if (static_cast<int>(v.size()) != q.dim())
        throw InvalidInput("stability_inequality: dimension mismatch");
    double deg_term = 0;
    for (int k = 0; k < q.dim(); ++k) deg_term += v[k] * data.pairing_deg[k];
    const double a2 = data.coupling_a * data.coupling_a;
    return -deg_term + a2 * data.base_volume * kPi * q.support_value(v);
}

IVec ord_mult_convert(const IVec& input, OrdMultDirection direction) {
    if (input.empty()) throw InvalidInput("ord_mult_convert: empty input");
    if (direction == OrdMultDirection::ord_to_mult) {
        IVec ords;
        ords.push_back(0);
        ords.insert(ords.end(), input.begin(), input.end());
        Int lowest = *std::min_element(ords.begin(), ords.end());
        for (Int& x : ords) x -= lowest;
        return ords;
    }
    if (input.size() < 2)
        throw InvalidInput("mult->ord needs at least two multiplicities");
    Int lowest = *std::min_element(input.begin(), input.end());
    if (lowest < 0) throw InvalidInput("multiplicities must be non-negative");
    if (lowest != 0) throw InvalidInput("at least one multiplicity must vanish");
    IVec ords(input.size() - 1);
    for (std::size_t j = 1; j < input.size(); ++j) ords[j - 1] = input[j] - input[0];
    return ords;
}

}  // namespace vortex
