#pragma once

#include "vortex/linalg.hpp"

#include <set>
#include <span>

namespace vortex {

/// Location of a query point relative to a halfspace system: the unique open
/// face containing it, resolved to tolerance eps.
struct FaceLocation {
    enum class Status { exterior, interior, boundary };
    Status status = Status::exterior;
    std::vector<int> tight;  // facet indices within eps of equality, sorted
    int face_dim = -1;       // n - rank(tight normals); n for interior, -1 outside

    bool interior() const { return status == Status::interior; }
    bool exterior() const { return status == Status::exterior; }
};

const char* to_string(FaceLocation::Status s);

struct Facet {
    IVec normal;  // primitive integer outward normal
    Rat offset;   // {x : normal . x <= offset}
};

struct DelzantCertificate {
    struct VertexEntry {
        int vertex = 0;
        int tight_count = 0;
        Int edge_det = 0;  // 0 when the vertex is not simple
    };
    bool delzant = false;
    std::vector<VertexEntry> entries;
};

/// Bounded full-dimensional rational polytope with primitive integer facet
/// normals, in pi-normalized coordinates. Immutable after construction.
class LatticePolytope {
  public:
    /// Builds from {x : normals[j] . x <= offsets[j]}. Normals are reduced to
    /// primitive form, redundant facets dropped (first occurrence kept among
    /// duplicates), vertices enumerated exactly over facet n-subsets.
    /// Throws UnboundedRegion / DegenerateRegion / InvalidInput.
    static LatticePolytope from_halfspaces(const std::vector<IVec>& normals, const RVec& offsets);

    int dim() const { return dim_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<RVec>& vertices() const { return vertices_; }
    /// Facet indices tight at each vertex (aligned with vertices()).
    const std::vector<std::vector<int>>& vertex_tight_sets() const { return vertex_tight_; }

    FaceLocation locate(std::span<const double> c, double eps = 1e-9) const;
    FaceLocation locate_exact(const RVec& c) const;

    /// All facet-index subsets S with a nonempty common intersection of the
    /// corresponding facets, including the empty set.
    std::set<std::vector<int>> nonempty_facet_intersections() const;

    DelzantCertificate is_delzant() const;

    /// Exact Lebesgue volume (pi-normalized units).
    Rat volume() const;
    /// Volume-weighted centroid.
    RVec barycentre() const;

    /// sup over the polytope of v . x (attained at a vertex).
    double support_value(std::span<const double> v) const;
    Rat support_value_exact(const RVec& v) const;

    LatticePolytope translate(const RVec& shift) const;

  private:
    LatticePolytope() = default;
    void cache_doubles();
    int dim_ = 0;
    std::vector<Facet> facets_;
    std::vector<RVec> vertices_;
    std::vector<std::vector<int>> vertex_tight_;
    std::vector<std::vector<double>> vertices_d_;  // derived cache
};

/// Tri-state location of c against an arbitrary halfspace list (shared by the
/// polytope and the unbounded moment-cone image).
FaceLocation locate_halfspaces(const std::vector<Facet>& facets, int dim,
                               std::span<const double> c, double eps);

}  // namespace vortex
