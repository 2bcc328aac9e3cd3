#include "test_util.hpp"
#include "vortex/delzant.hpp"

#include <doctest.h>

using namespace vortex;
using namespace vortex::testing;

TEST_CASE("delzant data of the standard simplex") {
    auto data = DelzantData::build(standard_simplex(2));
    CHECK(data.beta == IMat{{1, 0, -1}, {0, 1, -1}});
    REQUIRE(data.kernel_basis.size() == 1);
    CHECK(data.kernel_basis[0] == IVec{1, 1, 1});
    CHECK(data.surjective_on_lattice);

    // admissible patterns: all proper subsets of {0,1,2}
    CHECK(data.admissible_patterns.size() == 7);
    CHECK(data.admissible_patterns.count({0, 1, 2}) == 0);
}

TEST_CASE("delzant data of the square") {
    auto data = DelzantData::build(square());
    CHECK(data.facet_count() == 4);
    CHECK(data.surjective_on_lattice);
    REQUIRE(data.kernel_basis.size() == 2);
    for (const auto& k : data.kernel_basis) {
        IVec img = data.pushforward_degrees(k);
        CHECK(img == IVec{0, 0});
    }
    // kernel is spanned by the opposite-facet pairs
    auto in_kernel = [&](const IVec& v) {
        auto img = data.pushforward_degrees(v);
        return std::all_of(img.begin(), img.end(), [](Int x) { return x == 0; });
    };
    CHECK(in_kernel({1, 1, 0, 0}));
    CHECK(in_kernel({0, 0, 1, 1}));
}

TEST_CASE("delzant data of a segment") {
    auto data = DelzantData::build(segment(Rat(0), Rat(1)));
    CHECK(data.beta == IMat{{1, -1}});
    REQUIRE(data.kernel_basis.size() == 1);
    CHECK(data.kernel_basis[0] == IVec{1, 1});
}

TEST_CASE("non-delzant polytopes are rejected with a certificate") {
    auto bad = LatticePolytope::from_halfspaces({{0, -1}, {1, 1}, {-1, 1}},
                                                {Rat(0), Rat(1), Rat(1)});
    CHECK_THROWS_WITH_AS(DelzantData::build(bad), doctest::Contains("edge determinant"),
                         InvalidInput);
}

TEST_CASE("pushforward of degree vectors") {
    auto data = DelzantData::build(standard_simplex(3));
    // facet order e1, e2, e3, -(1,1,1): degrees (a1,a2,a3,a0) map to a_i - a0
    CHECK(data.pushforward_degrees({5, 7, 11, 2}) == IVec{3, 5, 9});
    CHECK(data.pushforward_degrees({0, 0, 0, 0}) == IVec{0, 0, 0});
    CHECK(data.pushforward_degrees({1, 1, 1, 1}) == IVec{0, 0, 0});
    CHECK_THROWS_AS(data.pushforward_degrees({1, 2}), InvalidInput);
}

TEST_CASE("lift of degree vectors") {
    auto seg = DelzantData::build(segment(Rat(0), Rat(1)));
    auto lift = seg.lift_degrees({2});
    CHECK(lift.particular == IVec{2, 0});
    REQUIRE(lift.fiber_basis.size() == 1);
    CHECK(lift.fiber_basis[0] == IVec{1, 1});

    auto sq = DelzantData::build(square());
    auto lift_sq = sq.lift_degrees({1, 0});
    CHECK(sq.pushforward_degrees(lift_sq.particular) == IVec{1, 0});
    CHECK(lift_sq.particular == IVec{1, 0, 0, 0});

    auto zero = seg.lift_degrees({0});
    CHECK(zero.particular == IVec{0, 0});
}

TEST_CASE("pushforward after lift is the identity") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<Int> deg(-6, 6);
    std::vector<DelzantData> cases = {DelzantData::build(standard_simplex(2)),
                                      DelzantData::build(standard_simplex(3)),
                                      DelzantData::build(square())};
    for (const auto& data : cases) {
        CHECK(data.surjective_on_lattice);
        for (int trial = 0; trial < 50; ++trial) {
            IVec alpha(data.rank());
            for (Int& x : alpha) x = deg(rng);
            auto lift = data.lift_degrees(alpha);
            CHECK(data.pushforward_degrees(lift.particular) == alpha);
            for (const auto& k : lift.fiber_basis) {
                IVec shifted = lift.particular;
                for (int j = 0; j < data.facet_count(); ++j) shifted[j] += k[j];
                CHECK(data.pushforward_degrees(shifted) == alpha);
            }
        }
    }
}

TEST_CASE("kernel basis is a primitive lattice") {
    for (const auto& data :
         {DelzantData::build(standard_simplex(2)), DelzantData::build(standard_simplex(3)),
          DelzantData::build(square())}) {
        const int m = static_cast<int>(data.kernel_basis.size());
        CHECK(m == data.facet_count() - data.rank());
        IVec invariants = smith_invariants(data.kernel_basis);
        CHECK(static_cast<int>(invariants.size()) == m);
        for (Int f : invariants) CHECK(f == 1);
    }
}

TEST_CASE("facet maps of generated delzant polytopes are lattice-surjective") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        LatticePolytope p = random_polytope(rng, n, 2);
        auto cert = p.is_delzant();
        if (!cert.delzant) continue;
        auto data = DelzantData::build(p);
        CHECK(data.surjective_on_lattice);
    }
}

TEST_CASE("no lift through a sublattice image") {
    auto data = DelzantData::from_matrix({{2}});
    CHECK_FALSE(data.surjective_on_lattice);
    CHECK_THROWS_AS(data.lift_degrees({3}), NoLift);
    CHECK(data.lift_degrees({6}).particular == IVec{3});
}
