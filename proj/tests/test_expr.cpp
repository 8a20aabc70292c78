#include "bratteli/expr.hpp"

#include "doctest.h"

using namespace bratteli;

TEST_CASE("expression evaluation") {
    EntryExpr e = EntryExpr::parse("n^3+2");
    CHECK(e.eval(0) == 2);
    CHECK(e.eval(1) == 3);
    CHECK(e.eval(2) == 10);
    CHECK(e.eval(3) == 29);

    CHECK(EntryExpr::parse("2+3*4^2").eval(0) == 50);
    CHECK(EntryExpr::parse("2*3!").eval(0) == 12);
    CHECK(EntryExpr::parse("2^3!").eval(0) == 40320);  // (2^3)!
    CHECK(EntryExpr::parse("(n+1)!").eval(4) == 120);
    CHECK(EntryExpr::parse("n!+2*n").eval(5) == 130);
    CHECK(EntryExpr::parse(" ( n + 1 ) * ( n + 2 ) ").eval(3) == 20);
    CHECK(EntryExpr::parse("n").eval(Int("123456789123456789")) ==
          Int("123456789123456789"));
}

TEST_CASE("expression printing round-trips") {
    for (const char* text :
         {"n^3+2", "2+3*4^2", "2*3!", "2^3!", "(n+1)!", "n!+2*n",
          "(n+1)*(n+2)", "n*(n+1)*(n+2)", "(2+n)^4", "n^2^3", "0", "n",
          "(n+n!)*(1+2*n)"}) {
        EntryExpr a = EntryExpr::parse(text);
        EntryExpr b = EntryExpr::parse(a.str());
        CHECK(b.str() == a.str());
        for (int n = 0; n <= 32; ++n) CHECK(a.eval(n) == b.eval(n));
    }
}

TEST_CASE("expression polynomial expansion") {
    EntryExpr e = EntryExpr::parse("(n+1)*(n+2)");
    REQUIRE(e.polynomial());
    Poly p = e.to_poly();
    CHECK(p.degree() == 2);
    for (int n = 0; n <= 10; ++n) CHECK(p.eval(n) == e.eval(n));

    CHECK(EntryExpr::parse("3!").polynomial());
    CHECK(EntryExpr::parse("3!").to_poly().eval(0) == 6);
    CHECK_FALSE(EntryExpr::parse("n!").polynomial());
    CHECK_THROWS_AS(EntryExpr::parse("n!").to_poly(), Error);

    CHECK(EntryExpr::parse("5").is_constant());
    CHECK(EntryExpr::parse("3!+2^4").is_constant());
    CHECK_FALSE(EntryExpr::parse("n+1").is_constant());
    CHECK(EntryExpr().eval(7) == 0);
}

TEST_CASE("expression parse errors") {
    for (const char* text : {"", "n-1", "n/2", "((n)", "n)", "2..3", "x",
                             "n^", "*n", "n^n", "3 4"}) {
        CHECK_THROWS_AS(EntryExpr::parse(text), Error);
    }
    try {
        EntryExpr::parse("n-1");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_spec);
    }
}

TEST_CASE("expression factorial guards") {
    CHECK_THROWS_AS(EntryExpr::parse("(n!)!").eval(1000000), Error);
    try {
        EntryExpr::parse("n!").eval(Int("99999999999999999999"));
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource);
    }
}
