#pragma once

#include "vortex/delzant.hpp"
#include "vortex/target.hpp"

#include <optional>

namespace vortex {

/// Base/bundle input of a classification run. For a Riemann-surface base the
/// degree pairings are the integer vector alpha and the self pairings vanish;
/// over higher-dimensional bases the caller supplies both pairing vectors.
struct BaseBundleData {
    int n = 0;                        // torus rank
    double base_volume = 0;           // Vol M
    double coupling_a = 0;            // a > 0
    std::vector<double> pairing_deg;  // integral of alpha_k(P) ^ omega^[m-1]
    std::vector<double> pairing_self; // integral of alpha_k ^ alpha_k ^ omega^[m-2]
    bool surface = false;
    IVec alpha;                       // integer degrees, surface case only
    std::optional<int> genus;

    static BaseBundleData for_surface(IVec alpha, double base_volume, double coupling_a,
                                      std::optional<int> genus = std::nullopt);
    static BaseBundleData general(std::vector<double> pairing_deg,
                                  std::vector<double> pairing_self, double base_volume,
                                  double coupling_a);
    void check() const;

    /// c(a, P, M) = deg P / (a^2 Vol M) in real units.
    std::vector<double> c_real() const;
    /// The same constant divided by pi, comparable with pi-unit polytopes.
    std::vector<double> c_pi() const;
};

struct ExistenceVerdict {
    std::vector<double> c_pi;
    FaceLocation location;
    std::string message;        // confinement report for boundary faces
    bool boundary_caveat = false;  // boundary classification not attempted
};

/// One connected moduli component: a divisor-degree multiplet, its
/// symmetric-product factors, dimension, energy (when a formula exists) and
/// the facet subsets whose divisor supports must not meet.
struct ModuliComponent {
    IVec degrees;
    std::vector<std::string> factors;  // "S^N M" descriptors
    Int complex_dim = 0;
    std::optional<double> energy;
    std::vector<std::vector<int>> constraints;
};

struct ModuliDescription {
    ExistenceVerdict verdict;
    std::vector<ModuliComponent> components;
    std::string completeness;  // "complete" | "conjectural"
    std::string energy_note;   // set when no energy formula is available
};

/// Locates c(a,P,M) in the target's moment image. Exterior means no
/// solutions; boundary reports the confinement statement.
ExistenceVerdict existence_verdict(const TargetModel& target, const BaseBundleData& data,
                                   double eps = 1e-9);

/// Flat target over a surface: at most one component, degrees N_j =
/// sum_k C_jk alpha_k; empty when some N_j < 0.
std::vector<ModuliComponent> classify_cn(const CnModel& target, const BaseBundleData& data);

/// Projective target over a surface: all degree multiplets with
/// N_l - N_0 = sum_k C_lk alpha_k and total degree <= cap.
std::vector<ModuliComponent> classify_cpn(const CPnModel& target, const BaseBundleData& data,
                                          Int cap);

/// Toric target over a surface: all N >= 0 with beta N = alpha and
/// sum N <= cap, via a lattice lift plus kernel-lattice enumeration.
std::vector<ModuliComponent> classify_toric(const ToricModel& target, const BaseBundleData& data,
                                            Int cap);

/// Full dispatch: verdict plus components (empty unless interior).
ModuliDescription classify(const TargetModel& target, const BaseBundleData& data, Int cap = 20,
                           double eps = 1e-9);

/// Topological energy in real units. Projective targets need the degree
/// multiplet of the component.
double energy_topological(const TargetModel& target, const BaseBundleData& data,
                          const std::optional<IVec>& degrees = std::nullopt);

/// Left side of the stability criterion with the flow limit replaced by the
/// polytope support function: -v . deg P + a^2 Vol M * sup_Q (pi v . u).
double stability_inequality(const LatticePolytope& q, const BaseBundleData& data,
                            std::span<const double> v);

enum class OrdMultDirection { ord_to_mult, mult_to_ord };

/// Inverse correspondences between n vanishing orders (ord_0 = 0 implied)
/// and n+1 non-negative intersection multiplicities with min = 0.
IVec ord_mult_convert(const IVec& input, OrdMultDirection direction);

}  // namespace vortex
