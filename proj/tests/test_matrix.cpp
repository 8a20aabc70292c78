#include "bratteli/matrix.hpp"

#include <random>

#include "doctest.h"

using namespace bratteli;

namespace {

// Cofactor expansion, the slow oracle for the Bareiss determinant.
Int det_cofactor(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        Int term = m(0, j) * det_cofactor(minor);
        acc += (j % 2 == 0) ? term : Int(-term);
    }
    return acc;
}

}  // namespace

TEST_CASE("matrix basics") {
    IntMatrix a = IntMatrix::from_rows({{1, 2}, {3, 4}});
    IntMatrix b = IntMatrix::from_rows({{0, 1}, {1, 1}});
    IntMatrix ab = a.mul(b);
    CHECK(ab == IntMatrix::from_rows({{2, 3}, {4, 7}}));
    CHECK(a.mul(IntMatrix::identity(2)) == a);

    IntVec v{5, 7};
    IntVec av = a.apply(v);
    CHECK(av[0] == 19);
    CHECK(av[1] == 43);
    IntVec atv = a.transpose_apply(v);
    CHECK(atv[0] == 26);
    CHECK(atv[1] == 38);

    CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), Error);
    CHECK_THROWS_AS(a.mul(IntMatrix(3, 3)), Error);
}

TEST_CASE("determinant agrees with cofactor expansion") {
    CHECK(determinant(IntMatrix::from_rows({{2, 0, 1}, {1, 3, 2}, {0, 1, 4}})) == 21);
    CHECK(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK(determinant(IntMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
    CHECK(determinant(IntMatrix::identity(4)) == 1);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + trial % 5;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
        CHECK(determinant(m) == det_cofactor(m));
    }
}

TEST_CASE("nullspace and rank") {
    RatMatrix m = to_rational(IntMatrix::from_rows({{1, 2}, {2, 4}}));
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    for (std::size_t i = 0; i < 2; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < 2; ++j) acc += m(i, j) * basis[0][j];
        CHECK(acc == 0);
    }
    CHECK(rank(m) == 1);

    RatMatrix full = to_rational(IntMatrix::from_rows({{1, 0}, {0, 1}}));
    CHECK(nullspace(full).empty());
    CHECK(rank(full) == 2);

    // one relation among three columns: col2 = col0 + col1
    RatMatrix dep = to_rational(IntMatrix::from_rows({{1, 0, 1}, {0, 1, 1}}));
    auto nb = nullspace(dep);
    REQUIRE(nb.size() == 1);
    CHECK(nb[0][0] == -1);
    CHECK(nb[0][1] == -1);
    CHECK(nb[0][2] == 1);
    CHECK(rank(dep) == 2);
}

TEST_CASE("rational helpers") {
    CHECK(rat_string(parse_rat("6/8")) == "3/4");
    CHECK(rat_string(parse_rat("-6/8")) == "-3/4");
    CHECK(rat_string(parse_rat("5")) == "5/1");
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("abc"), Error);
    CHECK_THROWS_AS(parse_rat(""), Error);

    RatVec x{Rat(1, 2), Rat(1, 2)};
    RatVec y{Rat(1, 3), Rat(2, 3)};
    CHECK(dstar(x, y) == Rat(1, 3));
    CHECK_THROWS_AS(dstar(x, RatVec{Rat(1)}), Error);
}
