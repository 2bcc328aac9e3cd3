#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace vortex;
using namespace vortex::testing;

namespace {

bool has_vertex(const LatticePolytope& p, const RVec& v) {
    return std::find(p.vertices().begin(), p.vertices().end(), v) != p.vertices().end();
}

}  // namespace

TEST_CASE("standard simplex from halfspaces") {
    auto p = standard_simplex(2);
    CHECK(p.dim() == 2);
    CHECK(p.facets().size() == 3);
    REQUIRE(p.vertices().size() == 3);
    CHECK(has_vertex(p, {Rat(0), Rat(0)}));
    CHECK(has_vertex(p, {Rat(-1), Rat(0)}));
    CHECK(has_vertex(p, {Rat(0), Rat(-1)}));

    auto p3 = standard_simplex(3);
    CHECK(p3.vertices().size() == 4);
}

TEST_CASE("square from halfspaces") {
    auto p = square();
    CHECK(p.vertices().size() == 4);
    CHECK(p.facets().size() == 4);
}

TEST_CASE("normals are reduced to primitive form with rescaled offsets") {
    auto p = LatticePolytope::from_halfspaces({{2, 0}, {-1, 0}, {0, 3}, {0, -1}},
                                              {Rat(4), Rat(0), Rat(3), Rat(0)});
    // same region as {x <= 2, x >= 0, y <= 1, y >= 0}
    for (const auto& f : p.facets()) {
        Int g = 0;
        for (Int x : f.normal) g = std::gcd(g, x);
        CHECK(g == 1);
    }
    CHECK(has_vertex(p, {Rat(2), Rat(1)}));
}

TEST_CASE("unbounded and degenerate regions are rejected") {
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({{1}}, {Rat(0)}), UnboundedRegion);
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({{1, 0}, {-1, 0}}, {Rat(1), Rat(1)}),
                    UnboundedRegion);
    // empty region
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({{1}, {-1}}, {Rat(-1), Rat(0)}),
                    DegenerateRegion);
    // empty region with rank-deficient normals
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({{1, 0}, {-1, 0}}, {Rat(0), Rat(-1)}),
                    DegenerateRegion);
    // a single point
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({{1}, {-1}}, {Rat(0), Rat(0)}),
                    DegenerateRegion);
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({}, {}), InvalidInput);
    CHECK_THROWS_AS(LatticePolytope::from_halfspaces({{0, 0}}, {Rat(1)}), InvalidInput);
}

TEST_CASE("redundant facets are dropped, duplicates keep the first") {
    auto p = LatticePolytope::from_halfspaces(
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, 0}},
        {Rat(1), Rat(1), Rat(1), Rat(1), Rat(5), Rat(1)});
    CHECK(p.facets().size() == 4);  // the slack diagonal cut and the duplicate are gone
    // the binding copy survives when offsets differ
    auto q = LatticePolytope::from_halfspaces({{1}, {1}, {-1}}, {Rat(2), Rat(1), Rat(0)});
    CHECK(q.facets().size() == 2);
    CHECK(q.facets()[0].offset == 1);
}

TEST_CASE("locate on the square") {
    auto p = square();
    std::vector<double> centre = {0.0, 0.0};
    auto loc = p.locate(centre);
    CHECK(loc.status == FaceLocation::Status::interior);
    CHECK(loc.face_dim == 2);
    CHECK(loc.tight.empty());

    std::vector<double> corner = {1.0, 1.0};
    loc = p.locate(corner);
    CHECK(loc.status == FaceLocation::Status::boundary);
    CHECK(loc.tight.size() == 2);
    CHECK(loc.face_dim == 0);

    std::vector<double> outside = {2.0, 0.0};
    CHECK(p.locate(outside).status == FaceLocation::Status::exterior);

    std::vector<double> near_edge = {1.0 - 1e-12, 0.0};
    CHECK(p.locate(near_edge, 1e-9).status == FaceLocation::Status::boundary);
    CHECK(p.locate(near_edge, 1e-15).status == FaceLocation::Status::interior);
    CHECK_THROWS_AS(p.locate(centre, 0.0), InvalidInput);
    std::vector<double> wrong_dim = {0.0};
    CHECK_THROWS_AS(p.locate(wrong_dim), InvalidInput);
}

TEST_CASE("locate on a segment endpoint") {
    Rat tau(1, 3);
    auto p = segment(tau - 1, tau);
    std::vector<double> left = {to_double(tau) - 1.0};
    auto loc = p.locate(left);
    CHECK(loc.status == FaceLocation::Status::boundary);
    CHECK(loc.face_dim == 0);
    REQUIRE(loc.tight.size() == 1);
    CHECK(p.facets()[loc.tight[0]].normal == IVec{-1});
}

TEST_CASE("facet intersection patterns") {
    auto simplex = standard_simplex(2);
    auto patterns = simplex.nonempty_facet_intersections();
    // all proper subsets of {0,1,2}: 7 of them
    CHECK(patterns.size() == 7);
    CHECK(patterns.count({}) == 1);
    CHECK(patterns.count({0, 1, 2}) == 0);

    auto sq = square();
    auto sq_pat = sq.nonempty_facet_intersections();
    // empty set + 4 singletons + 4 corner pairs
    CHECK(sq_pat.size() == 9);
    // opposite facets (antipodal normals) never meet
    for (const auto& pat : sq_pat) {
        if (pat.size() != 2) continue;
        IVec a = sq.facets()[pat[0]].normal, b = sq.facets()[pat[1]].normal;
        CHECK(IVec{-a[0], -a[1]} != b);
    }

    auto seg = segment(Rat(0), Rat(1));
    CHECK(seg.nonempty_facet_intersections() == std::set<std::vector<int>>{{}, {0}, {1}});
}

TEST_CASE("pattern set is downward closed") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = random_polytope(rng, 2 + static_cast<int>(rng() % 2));
        auto patterns = p.nonempty_facet_intersections();
        for (const auto& pat : patterns) {
            for (std::size_t skip = 0; skip < pat.size(); ++skip) {
                std::vector<int> sub;
                for (std::size_t i = 0; i < pat.size(); ++i)
                    if (i != skip) sub.push_back(pat[i]);
                CHECK(patterns.count(sub) == 1);
            }
        }
    }
}

TEST_CASE("delzant certificates") {
    CHECK(square().is_delzant().delzant);
    CHECK(standard_simplex(2).is_delzant().delzant);
    CHECK(standard_simplex(3).is_delzant().delzant);

    // triangle (0,1),(1,0),(-1,0): the top vertex has edge determinant 2
    auto bad = LatticePolytope::from_halfspaces({{0, -1}, {1, 1}, {-1, 1}},
                                                {Rat(0), Rat(1), Rat(1)});
    auto cert = bad.is_delzant();
    CHECK_FALSE(cert.delzant);
    bool found = false;
    for (const auto& e : cert.entries)
        if (e.edge_det == 2 || e.edge_det == -2) found = true;
    CHECK(found);
}

TEST_CASE("volume of reference polytopes") {
    CHECK(square().volume() == 4);
    CHECK(standard_simplex(2).volume() == Rat(1, 2));
    CHECK(standard_simplex(3).volume() == Rat(1, 6));
    CHECK(segment(Rat(-1, 3), Rat(2, 3)).volume() == 1);
}

TEST_CASE("volume and delzant invariance under unimodular maps") {
    // transform normals by (U^T)^{-1} with offsets fixed: vertices map by U
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        auto p = (n == 2) ? standard_simplex(2) : standard_simplex(3);
        IMat u = random_sl(rng, n);
        IMat ut(n, IVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ut[i][j] = u[j][i];
        IMat ut_inv = inverse_unimodular(ut);
        std::vector<IVec> normals;
        RVec offsets;
        for (const auto& f : p.facets()) {
            normals.push_back(mat_vec(ut_inv, f.normal));
            offsets.push_back(f.offset);
        }
        auto q = LatticePolytope::from_halfspaces(normals, offsets);
        CHECK(q.volume() == p.volume());
        CHECK(q.is_delzant().delzant == p.is_delzant().delzant);
    }
}

TEST_CASE("barycentre of reference polytopes") {
    auto b = standard_simplex(2).barycentre();
    CHECK(b == RVec{Rat(-1, 3), Rat(-1, 3)});
    CHECK(square().barycentre() == RVec{Rat(0), Rat(0)});
    // for a simplex the triangulation centroid equals the vertex average
    auto p = standard_simplex(3);
    RVec avg(3, Rat(0));
    for (const auto& v : p.vertices())
        for (int k = 0; k < 3; ++k) avg[k] += v[k] / 4;
    CHECK(p.barycentre() == avg);
}

TEST_CASE("barycentre is interior and matches sampling") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        auto p = random_polytope(rng, 2);
        auto b = p.barycentre();
        CHECK(p.locate_exact(b).status == FaceLocation::Status::interior);
    }

    // seeded rejection-sampling centroid oracle on one fixed polytope
    auto p = LatticePolytope::from_halfspaces({{1, 0}, {0, 1}, {-1, -2}, {-1, 1}},
                                              {Rat(2), Rat(1), Rat(2), Rat(3)});
    auto b = to_doubles(p.barycentre());
    std::mt19937_64 rng2(97);
    std::uniform_real_distribution<double> ux(-7, 3), uy(-7, 2);
    double sx = 0, sy = 0;
    long hits = 0;
    for (long i = 0; i < 400000; ++i) {
        std::vector<double> pt = {ux(rng2), uy(rng2)};
        if (p.locate(pt, 1e-12).status != FaceLocation::Status::exterior) {
            sx += pt[0];
            sy += pt[1];
            ++hits;
        }
    }
    REQUIRE(hits > 1000);
    CHECK(std::abs(sx / hits - b[0]) < 2e-2);
    CHECK(std::abs(sy / hits - b[1]) < 2e-2);
}

TEST_CASE("support values") {
    auto sq = square();
    std::vector<double> v11 = {1.0, 1.0};
    CHECK(sq.support_value(v11) == doctest::Approx(2.0));
    std::vector<double> zero = {0.0, 0.0};
    CHECK(sq.support_value(zero) == doctest::Approx(0.0));

    Rat tau(2, 7);
    auto seg = segment(tau - 1, tau);
    std::vector<double> minus = {-1.0};
    CHECK(seg.support_value(minus) == doctest::Approx(to_double(1 - tau)));
    CHECK(seg.support_value_exact({Rat(-1)}) == 1 - tau);
}

TEST_CASE("support dominates interior points strictly") {
    std::mt19937_64 rng(41);
    auto p = random_polytope(rng, 3);
    auto bd = to_doubles(p.barycentre());
    for (int i = 0; i < 1000; ++i) {
        auto v = random_unit_vector(rng, 3);
        double sup = p.support_value(v);
        double vc = 0;
        for (int k = 0; k < 3; ++k) vc += v[k] * bd[k];
        CHECK(sup > vc);
    }
}

TEST_CASE("translate shifts offsets, vertices and barycentre") {
    auto sq = square();
    RVec s = {Rat(1), Rat(0)};
    auto moved = sq.translate(s);
    CHECK(moved.volume() == sq.volume());
    CHECK(has_vertex(moved, {Rat(2), Rat(1)}));
    CHECK(has_vertex(moved, {Rat(0), Rat(-1)}));
    CHECK(moved.barycentre() == RVec{Rat(1), Rat(0)});
    // locate equivariance
    std::vector<double> c = {0.25, -0.5};
    std::vector<double> cs = {1.25, -0.5};
    CHECK(sq.locate(c).status == moved.locate(cs).status);
    // facet normals unchanged
    for (std::size_t j = 0; j < sq.facets().size(); ++j)
        CHECK(sq.facets()[j].normal == moved.facets()[j].normal);
}

TEST_CASE("vertex facet duality holds exactly") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        auto p = random_polytope(rng, n);
        for (std::size_t v = 0; v < p.vertices().size(); ++v) {
            auto loc = p.locate_exact(p.vertices()[v]);
            CHECK(loc.status == FaceLocation::Status::boundary);
            CHECK(loc.face_dim == 0);
            CHECK(loc.tight == p.vertex_tight_sets()[v]);
        }
        for (int j = 0; j < static_cast<int>(p.facets().size()); ++j) {
            std::vector<RVec> on_facet;
            for (std::size_t v = 0; v < p.vertices().size(); ++v) {
                const auto& tight = p.vertex_tight_sets()[v];
                if (std::find(tight.begin(), tight.end(), j) != tight.end())
                    on_facet.push_back(p.vertices()[v]);
            }
            CHECK(affine_rank(on_facet) == n - 1);
        }
    }
}
