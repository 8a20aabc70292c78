#pragma once

#include <string>
#include <vector>

#include "bratteli/rational.hpp"

namespace bratteli {

// Polynomial in one variable with integer coefficients, used for exact
// eventual-behavior certificates on level-indexed sequences.
class Poly {
public:
    Poly() = default;  // zero
    static Poly constant(const Int& c);
    static Poly var();  // n

    // degree of the zero polynomial is -1
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Int& coeff(std::size_t i) const;
    const Int& leading() const;

    Int eval(const Int& n) const;
    std::string str() const;  // e.g. "n^3+2"

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly pow(unsigned e) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // Sign of p(n) for all large n: sign of the leading coefficient.
    int eventual_sign() const;

    // Smallest bound N such that sign(p(n)) == eventual_sign() for all
    // integers n >= N that this certificate promises (Cauchy root bound).
    Int positivity_bound() const;

private:
    std::vector<Int> c_;  // c_[i] * n^i, no trailing zeros
    void trim();
    friend Poly make_poly(std::vector<Int>);
};

Poly make_poly(std::vector<Int> coeffs);

// Eventually-defined rational function num(n)/den(n); den must have positive
// eventual sign wherever these are produced.
struct PolyRatio {
    Poly num, den;

    Rat eval(const Int& n) const;
    std::string str() const;
};

enum class Ordering { less, equal, greater };

// Eventual ordering of two rational functions, with a level from which the
// ordering is exact.
struct EventualOrder {
    Ordering order;
    Int valid_from;
};

EventualOrder eventual_compare(const PolyRatio& a, const PolyRatio& b);

enum class SeriesClass { convergent, divergent };

// Exact classification of sum_n num(n)/den(n) for an eventually-nonnegative
// rational function: divergent iff deg den - deg num <= 1 (and num != 0).
struct SeriesCertificate {
    SeriesClass cls;
    int num_degree;
    int den_degree;
    Int valid_from;  // term formula is sign-stable from this level on
};

SeriesCertificate classify_series(const PolyRatio& term);

}  // namespace bratteli
