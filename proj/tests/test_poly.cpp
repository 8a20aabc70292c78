#include "bratteli/poly.hpp"

#include "doctest.h"

using namespace bratteli;

TEST_CASE("polynomial arithmetic") {
    Poly n = Poly::var();
    Poly p = (n + Poly::constant(1)) * (n + Poly::constant(2));
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == 2);
    CHECK(p.coeff(1) == 3);
    CHECK(p.coeff(2) == 1);
    CHECK(p.eval(5) == 42);
    CHECK(p.str() == "n^2+3*n+2");

    Poly q = p - p;
    CHECK(q.is_zero());
    CHECK(q.degree() == -1);
    CHECK(q.str() == "0");

    CHECK((n.pow(3) + Poly::constant(2)).str() == "n^3+2");
    CHECK((n - Poly::constant(3)).str() == "n-3");
    CHECK((Poly::constant(0) - n.pow(2)).str() == "-n^2");
}

TEST_CASE("eventual sign and positivity bound") {
    Poly n = Poly::var();
    Poly p = n.pow(2) - Poly::constant(10) * n + Poly::constant(1);
    CHECK(p.eventual_sign() == 1);
    Int b = p.positivity_bound();
    CHECK(b == 11);
    CHECK(p.eval(b) > 0);
    CHECK(p.eval(b + 7) > 0);
}

TEST_CASE("eventual comparison of rational functions") {
    Poly n = Poly::var();
    PolyRatio harmonic{Poly::constant(1), n + Poly::constant(1)};
    PolyRatio square{Poly::constant(1), n.pow(2) + Poly::constant(1)};
    EventualOrder ord = eventual_compare(harmonic, square);
    CHECK(ord.order == Ordering::greater);
    CHECK(harmonic.eval(ord.valid_from) > square.eval(ord.valid_from));

    EventualOrder eq = eventual_compare(harmonic, harmonic);
    CHECK(eq.order == Ordering::equal);

    // 2/(n+5) < 3/(n+1) eventually (in fact everywhere >= 0)
    PolyRatio a{Poly::constant(2), n + Poly::constant(5)};
    PolyRatio b{Poly::constant(3), n + Poly::constant(1)};
    CHECK(eventual_compare(a, b).order == Ordering::less);
}

TEST_CASE("series classification by degree gap") {
    Poly n = Poly::var();
    SeriesCertificate harmonic =
        classify_series({Poly::constant(1), n + Poly::constant(1)});
    CHECK(harmonic.cls == SeriesClass::divergent);
    CHECK(harmonic.num_degree == 0);
    CHECK(harmonic.den_degree == 1);

    SeriesCertificate inv_square =
        classify_series({Poly::constant(1), n.pow(2) + Poly::constant(1)});
    CHECK(inv_square.cls == SeriesClass::convergent);

    // n / (n^3 + 2 + n): degree gap 2 => convergent
    SeriesCertificate cube =
        classify_series({n, n.pow(3) + n + Poly::constant(2)});
    CHECK(cube.cls == SeriesClass::convergent);

    // (n+1) / (n^2+1): gap 1 => divergent
    SeriesCertificate gap1 =
        classify_series({n + Poly::constant(1), n.pow(2) + Poly::constant(1)});
    CHECK(gap1.cls == SeriesClass::divergent);

    // constant / constant diverges; zero numerator converges
    CHECK(classify_series({Poly::constant(1), Poly::constant(4)}).cls ==
          SeriesClass::divergent);
    CHECK(classify_series({Poly(), Poly::constant(4)}).cls ==
          SeriesClass::convergent);

    CHECK_THROWS_AS(classify_series({Poly::constant(1), Poly()}), Error);
    CHECK_THROWS_AS(
        classify_series({Poly::constant(0) - Poly::var(), Poly::constant(1)}),
        Error);
}
