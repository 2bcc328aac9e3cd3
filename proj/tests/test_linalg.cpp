#include "vortex/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace vortex;

TEST_CASE("primitive vector reduction") {
    CHECK(primitive_vector({2, 4, -6}) == IVec{1, 2, -3});
    CHECK(primitive_vector({0, 0, 5}) == IVec{0, 0, 1});
    CHECK(primitive_vector({3, 5}) == IVec{3, 5});
    CHECK(primitive_vector({-4}) == IVec{-1});
    CHECK_THROWS_AS(primitive_vector({0, 0}), InvalidInput);
}

TEST_CASE("rational solve and rank") {
    RMat a = {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    auto x = solve_rational(a, {Rat(3), Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);

    RMat singular = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK_FALSE(solve_rational(singular, {Rat(1), Rat(1)}).has_value());
    CHECK(rank_rational(singular) == 1);
    CHECK(det_rational(singular) == 0);
    CHECK(det_integer({{1, 2}, {3, 4}}) == -2);
}

TEST_CASE("affine rank") {
    CHECK(affine_rank({{Rat(0), Rat(0)}}) == 0);
    CHECK(affine_rank({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}) == 1);
    CHECK(affine_rank({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == 2);
    CHECK(affine_rank({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}}) == 1);
}

TEST_CASE("hermite form of the segment facet map") {
    auto res = hermite_columns({{1, -1}});
    CHECK(res.rank == 1);
    CHECK(res.h[0] == IVec{1, 0});
    auto kernel = integer_kernel_basis({{1, -1}});
    REQUIRE(kernel.size() == 1);
    CHECK(kernel[0] == IVec{1, 1});
}

TEST_CASE("hermite identity A U = H on random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> entry(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        int d = n + static_cast<int>(rng() % 4);
        IMat a(n, IVec(d));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        auto res = hermite_columns(a);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                Int sum = 0;
                for (int k = 0; k < d; ++k) sum += a[i][k] * res.u[k][j];
                CHECK(sum == res.h[i][j]);
            }
        }
        // U unimodular
        Int det = det_integer(res.u);
        CHECK((det == 1 || det == -1));
        // kernel vectors really lie in the kernel
        for (const IVec& k : integer_kernel_basis(a)) {
            IVec img = mat_vec(a, k);
            for (Int x : img) CHECK(x == 0);
        }
    }
}

TEST_CASE("smith invariants") {
    CHECK(smith_invariants({{1, 0}, {0, 1}}) == IVec{1, 1});
    CHECK(smith_invariants({{2, 0}, {0, 4}}) == IVec{2, 4});
    CHECK(smith_invariants({{2, 4}, {6, 8}}) == IVec{2, 4});
    CHECK(smith_invariants({{0, 0}}) == IVec{});
    CHECK(smith_invariants({{1, -1}}) == IVec{1});
    // invariant factors divide each other
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Int> entry(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        IMat a(2, IVec(3));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        IVec inv = smith_invariants(a);
        for (std::size_t i = 1; i < inv.size(); ++i) CHECK(inv[i] % inv[i - 1] == 0);
    }
}

TEST_CASE("integer solve") {
    auto x = solve_integer({{1, -1}}, {2});
    REQUIRE(x.has_value());
    CHECK(mat_vec({{1, -1}}, *x) == IVec{2});
    CHECK(*x == IVec{2, 0});

    CHECK_FALSE(solve_integer({{2}}, {3}).has_value());
    CHECK(solve_integer({{2}}, {6}).value() == IVec{3});

    // inconsistent stacked system
    CHECK_FALSE(solve_integer({{1, 0}, {1, 0}}, {1, 2}).has_value());
}

TEST_CASE("unimodular inverse") {
    IMat c = {{1, 1}, {0, 1}};
    IMat inv = inverse_unimodular(c);
    CHECK(inv == IMat{{1, -1}, {0, 1}});
    CHECK_THROWS_AS(inverse_unimodular({{2, 0}, {0, 1}}), InvalidInput);
}

TEST_CASE("kernel direction of facet subsets") {
    IVec dir = kernel_direction({{1, 1}}, 2);
    CHECK(dir[0] + dir[1] == 0);
    CHECK((std::abs(dir[0]) == 1 && std::abs(dir[1]) == 1));
}
