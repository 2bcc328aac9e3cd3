#include "vortex/polytope.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace vortex {

const char* to_string(FaceLocation::Status s) {
    switch (s) {
        case FaceLocation::Status::exterior: return "exterior";
        case FaceLocation::Status::interior: return "interior";
        case FaceLocation::Status::boundary: return "boundary";
    }
    return "?";
}

namespace {

// Iterates over all size-k index subsets of {0..count-1}.
template <typename Fn>
void for_each_subset(int count, int k, Fn&& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > count) return;
    while (true) {
        fn(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == count - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Fourier-Motzkin feasibility of {a . x <= b}; only invoked to distinguish an
// unbounded region from an empty one, so sizes stay tiny.
bool feasible_fm(std::vector<std::pair<RVec, Rat>> cons, int n) {
    for (int var = n - 1; var >= 0; --var) {
        std::vector<std::pair<RVec, Rat>> zero, pos, neg;
        for (auto& c : cons) {
            if (c.first[var] == 0) zero.push_back(std::move(c));
            else if (c.first[var] > 0) pos.push_back(std::move(c));
            else neg.push_back(std::move(c));
        }
        std::set<std::pair<RVec, Rat>> next(zero.begin(), zero.end());
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                RVec row(var, Rat(0));
                Rat pc = p.first[var], qc = -q.first[var];
                for (int k = 0; k < var; ++k) row[k] = qc * p.first[k] + pc * q.first[k];
                Rat rhs = qc * p.second + pc * q.second;
                // normalize for dedup
                Rat scale = 0;
                for (const Rat& v : row)
                    if (v != 0) { scale = abs(v); break; }
                if (scale == 0 && rhs != 0) scale = abs(rhs);
                if (scale != 0) {
                    for (Rat& v : row) v /= scale;
                    rhs /= scale;
                }
                next.emplace(std::move(row), std::move(rhs));
            }
        }
        cons.assign(next.begin(), next.end());
        for (auto& c : cons) c.first.resize(var);
    }
    for (const auto& c : cons)
        if (c.second < 0) return false;
    return true;
}

}  // namespace

FaceLocation locate_halfspaces(const std::vector<Facet>& facets, int dim,
                               std::span<const double> c, double eps) {
    FaceLocation loc;
    std::vector<int> tight;
    for (int j = 0; j < static_cast<int>(facets.size()); ++j) {
        double g = -to_double(facets[j].offset);
        for (std::size_t k = 0; k < c.size(); ++k)
            g += static_cast<double>(facets[j].normal[k]) * c[k];
        if (g > eps) {
            loc.status = FaceLocation::Status::exterior;
            loc.face_dim = -1;
            loc.tight.clear();
            return loc;
        }
        if (std::abs(g) <= eps) tight.push_back(j);
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

FaceLocation LatticePolytope::locate(std::span<const double> c, double eps) const {
    if (static_cast<int>(c.size()) != dim_) throw InvalidInput("locate: dimension mismatch");
    if (eps <= 0) throw InvalidInput("locate: eps must be positive");
    return locate_halfspaces(facets_, dim_, c, eps);
}

FaceLocation LatticePolytope::locate_exact(const RVec& c) const {
    if (static_cast<int>(c.size()) != dim_) throw InvalidInput("locate: dimension mismatch");
    FaceLocation loc;
    std::vector<int> tight;
    for (int j = 0; j < static_cast<int>(facets_.size()); ++j) {
        Rat g = dot(facets_[j].normal, c) - facets_[j].offset;
        if (g > 0) {
            loc.status = FaceLocation::Status::exterior;
            loc.face_dim = -1;
            return loc;
        }
        if (g == 0) tight.push_back(j);
    }
    if (tight.empty()) {
        loc.status = FaceLocation::Status::interior;
        loc.face_dim = dim_;
        return loc;
    }
    loc.status = FaceLocation::Status::boundary;
    loc.tight = tight;
    IMat rows;
    for (int j : tight) rows.push_back(facets_[j].normal);
    loc.face_dim = dim_ - rank_integer(rows);
    return loc;
}

LatticePolytope LatticePolytope::from_halfspaces(const std::vector<IVec>& normals_in,
                                                 const RVec& offsets_in) {
    if (normals_in.empty() || normals_in.size() != offsets_in.size())
        throw InvalidInput("from_halfspaces: need equally many normals and offsets");
    const int n = static_cast<int>(normals_in[0].size());
    if (n < 1) throw InvalidInput("from_halfspaces: dimension must be >= 1");

    std::vector<Facet> facets;
    for (std::size_t j = 0; j < normals_in.size(); ++j) {
        if (static_cast<int>(normals_in[j].size()) != n)
            throw InvalidInput("from_halfspaces: inconsistent normal dimensions");
        Int g = 0;
        for (Int x : normals_in[j]) g = std::gcd(g, x);
        if (g == 0) throw InvalidInput("from_halfspaces: zero normal vector");
        Facet f;
        f.normal = normals_in[j];
        for (Int& x : f.normal) x /= g;
        f.offset = offsets_in[j] / g;
        // exact duplicates keep the first occurrence
        bool dup = false;
        for (const Facet& seen : facets)
            if (seen.normal == f.normal && seen.offset == f.offset) { dup = true; break; }
        if (!dup) facets.push_back(std::move(f));
    }
    const int d = static_cast<int>(facets.size());

    IMat normal_rows(d);
    for (int j = 0; j < d; ++j) normal_rows[j] = facets[j].normal;

    auto region_feasible = [&]() {
        std::vector<std::pair<RVec, Rat>> cons;
        for (const Facet& f : facets) {
            RVec row(f.normal.begin(), f.normal.end());
            cons.emplace_back(std::move(row), f.offset);
        }
        return feasible_fm(std::move(cons), n);
    };

    // Recession cone {x : u_j . x <= 0}: a line or an extreme ray there means
    // the region, when nonempty, is unbounded.
    bool recession_nontrivial = rank_integer(normal_rows) < n;
    if (!recession_nontrivial) {
        for_each_subset(d, n - 1, [&](const std::vector<int>& idx) {
            if (recession_nontrivial) return;
            IMat rows;
            for (int j : idx) rows.push_back(facets[j].normal);
            if (rank_integer(rows) != n - 1) return;
            IVec ray;
            try {
                ray = kernel_direction(rows, n);
            } catch (const InternalError&) {
                return;
            }
            bool ok_pos = true, ok_neg = true;
            for (const Facet& f : facets) {
                Int s = 0;
                for (int k = 0; k < n; ++k) s += f.normal[k] * ray[k];
                if (s > 0) ok_pos = false;
                if (s < 0) ok_neg = false;
            }
            if (ok_pos || ok_neg) recession_nontrivial = true;
        });
    }
    if (recession_nontrivial) {
        if (region_feasible()) throw UnboundedRegion("halfspace region is unbounded");
        throw DegenerateRegion("halfspace region is empty");
    }

    // Vertex enumeration over facet n-subsets in exact arithmetic.
    std::map<RVec, std::vector<int>> vertex_map;
    for_each_subset(d, n, [&](const std::vector<int>& idx) {
        RMat a(n, RVec(n));
        RVec b(n);
        for (int r = 0; r < n; ++r) {
            for (int k = 0; k < n; ++k) a[r][k] = facets[idx[r]].normal[k];
            b[r] = facets[idx[r]].offset;
        }
        auto x = solve_rational(std::move(a), std::move(b));
        if (!x) return;
        std::vector<int> tight;
        for (int j = 0; j < d; ++j) {
            Rat g = dot(facets[j].normal, *x) - facets[j].offset;
            if (g > 0) return;  // infeasible
            if (g == 0) tight.push_back(j);
        }
        vertex_map.emplace(std::move(*x), std::move(tight));
    });

    if (vertex_map.empty()) throw DegenerateRegion("halfspace region is empty");
    std::vector<RVec> vertices;
    std::vector<std::vector<int>> tight_sets;
    for (auto& [v, tight] : vertex_map) {
        vertices.push_back(v);
        tight_sets.push_back(tight);
    }
    if (affine_rank(vertices) < n)
        throw DegenerateRegion("halfspace region is lower-dimensional");

    // A facet is kept iff its tight vertex set spans an (n-1)-face.
    std::vector<int> keep;
    for (int j = 0; j < d; ++j) {
        std::vector<RVec> on_facet;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (std::find(tight_sets[v].begin(), tight_sets[v].end(), j) != tight_sets[v].end())
                on_facet.push_back(vertices[v]);
        if (!on_facet.empty() && affine_rank(on_facet) == n - 1) keep.push_back(j);
    }

    LatticePolytope poly;
    poly.dim_ = n;
    for (int j : keep) poly.facets_.push_back(facets[j]);
    poly.vertices_ = std::move(vertices);
    poly.vertex_tight_.assign(poly.vertices_.size(), {});
    for (std::size_t v = 0; v < poly.vertices_.size(); ++v) {
        for (int jj = 0; jj < static_cast<int>(keep.size()); ++jj) {
            int old = keep[jj];
            if (std::find(tight_sets[v].begin(), tight_sets[v].end(), old) != tight_sets[v].end())
                poly.vertex_tight_[v].push_back(jj);
        }
        IMat rows;
        for (int jj : poly.vertex_tight_[v]) rows.push_back(poly.facets_[jj].normal);
        if (rank_integer(rows) != n)
            throw InternalError("vertex tight set lost full rank after facet pruning");
    }
    poly.cache_doubles();
    return poly;
}

void LatticePolytope::cache_doubles() {
    vertices_d_.resize(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) vertices_d_[i] = to_doubles(vertices_[i]);
}

std::set<std::vector<int>> LatticePolytope::nonempty_facet_intersections() const {
    std::set<std::vector<int>> out;
    out.insert(std::vector<int>{});
    for (const auto& tight : vertex_tight_) {
        const int k = static_cast<int>(tight.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> subset;
            for (int b = 0; b < k; ++b)
                if (mask & (1u << b)) subset.push_back(tight[b]);
            out.insert(std::move(subset));
        }
    }
    return out;
}

DelzantCertificate LatticePolytope::is_delzant() const {
    DelzantCertificate cert;
    cert.delzant = true;
    const int n = dim_;
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
        DelzantCertificate::VertexEntry entry;
        entry.vertex = v;
        entry.tight_count = static_cast<int>(vertex_tight_[v].size());
        if (entry.tight_count != n) {
            entry.edge_det = 0;
            cert.delzant = false;
            cert.entries.push_back(entry);
            continue;
        }
        IMat edge_cols(n, IVec(n));
        for (int i = 0; i < n; ++i) {
            IMat rows;
            for (int j = 0; j < n; ++j)
                if (j != i) rows.push_back(facets_[vertex_tight_[v][j]].normal);
            IVec e = kernel_direction(rows, n);
            Int s = 0;
            for (int k = 0; k < n; ++k) s += facets_[vertex_tight_[v][i]].normal[k] * e[k];
            if (s == 0) throw InternalError("edge direction orthogonal to its own facet");
            if (s > 0)
                for (Int& x : e) x = -x;
            for (int r = 0; r < n; ++r) edge_cols[r][i] = e[r];
        }
        entry.edge_det = det_integer(edge_cols);
        if (entry.edge_det != 1 && entry.edge_det != -1) cert.delzant = false;
        cert.entries.push_back(entry);
    }
    return cert;
}

namespace {

// Cone-from-first-vertex triangulation of a face, recursing through the face
// lattice read off the vertex tight sets.
void triangulate_face(const LatticePolytope& poly, const std::vector<int>& face_vertices, int k,
                      std::vector<std::vector<int>>& out) {
    if (k == 0) {
        out.push_back({face_vertices[0]});
        return;
    }
    const int v0 = face_vertices[0];
    const auto& verts = poly.vertices();
    const auto& tight_sets = poly.vertex_tight_sets();
    std::set<std::vector<int>> seen;
    for (int j = 0; j < static_cast<int>(poly.facets().size()); ++j) {
        std::vector<int> ridge;
        for (int v : face_vertices)
            if (std::find(tight_sets[v].begin(), tight_sets[v].end(), j) != tight_sets[v].end())
                ridge.push_back(v);
        if (ridge.empty()) continue;
        if (std::find(ridge.begin(), ridge.end(), v0) != ridge.end()) continue;
        std::vector<RVec> pts;
        for (int v : ridge) pts.push_back(verts[v]);
        if (affine_rank(pts) != k - 1) continue;
        if (!seen.insert(ridge).second) continue;
        std::vector<std::vector<int>> sub;
        triangulate_face(poly, ridge, k - 1, sub);
        for (auto& s : sub) {
            s.insert(s.begin(), v0);
            out.push_back(std::move(s));
        }
    }
}

Rat simplex_volume(const std::vector<RVec>& pts) {
    const int n = static_cast<int>(pts.size()) - 1;
    RMat m(n, RVec(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m[i][k] = pts[i + 1][k] - pts[0][k];
    Rat det = det_rational(std::move(m));
    if (det < 0) det = -det;
    Rat fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    return det / fact;
}

}  // namespace

Rat LatticePolytope::volume() const {
    std::vector<int> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<std::vector<int>> simplices;
    triangulate_face(*this, all, dim_, simplices);
    Rat total = 0;
    for (const auto& s : simplices) {
        std::vector<RVec> pts;
        for (int v : s) pts.push_back(vertices_[v]);
        total += simplex_volume(pts);
    }
    return total;
}

RVec LatticePolytope::barycentre() const {
    std::vector<int> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<std::vector<int>> simplices;
    triangulate_face(*this, all, dim_, simplices);
    Rat total = 0;
    RVec weighted(dim_, Rat(0));
    for (const auto& s : simplices) {
        std::vector<RVec> pts;
        for (int v : s) pts.push_back(vertices_[v]);
        Rat vol = simplex_volume(pts);
        total += vol;
        for (int k = 0; k < dim_; ++k) {
            Rat centroid = 0;
            for (const RVec& p : pts) centroid += p[k];
            weighted[k] += vol * centroid / static_cast<Int>(pts.size());
        }
    }
    if (total == 0) throw InternalError("zero-volume polytope in barycentre");
    for (Rat& w : weighted) w /= total;
    return weighted;
}

double LatticePolytope::support_value(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_) throw InvalidInput("support_value: dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : vertices_d_) {
        double s = 0;
        for (int k = 0; k < dim_; ++k) s += v[k] * p[k];
        best = std::max(best, s);
    }
    return best;
}

Rat LatticePolytope::support_value_exact(const RVec& v) const {
    if (static_cast<int>(v.size()) != dim_) throw InvalidInput("support_value: dimension mismatch");
    Rat best;
    bool first = true;
    for (const RVec& p : vertices_) {
        Rat s = dot(v, p);
        if (first || s > best) { best = s; first = false; }
    }
    return best;
}

LatticePolytope LatticePolytope::translate(const RVec& shift) const {
    if (static_cast<int>(shift.size()) != dim_) throw InvalidInput("translate: dimension mismatch");
    LatticePolytope out;
    out.dim_ = dim_;
    out.facets_ = facets_;
    for (Facet& f : out.facets_) f.offset += dot(f.normal, shift);
    out.vertices_ = vertices_;
    for (RVec& v : out.vertices_)
        for (int k = 0; k < dim_; ++k) v[k] += shift[k];
    out.vertex_tight_ = vertex_tight_;
    out.cache_doubles();
    return out;
}

}  // namespace vortex
