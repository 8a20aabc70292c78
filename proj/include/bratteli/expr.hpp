#pragma once

#include <memory>
#include <string>

#include "bratteli/poly.hpp"
#include "bratteli/rational.hpp"

namespace bratteli {

// Closed-form level rule: non-negative integer expressions in one variable n
// built from +, *, ^const and postfix factorial.  Total by construction (no
// subtraction or division).
class EntryExpr {
public:
    EntryExpr();  // the constant 0

    static EntryExpr parse(const std::string& text);
    static EntryExpr constant(const Int& value);

    Int eval(const Int& n) const;
    std::string str() const;

    // True when no factorial is applied to an n-dependent subexpression.
    bool polynomial() const;

    // Expansion into a polynomial in n; throws Error(range) if !polynomial().
    Poly to_poly() const;

    bool is_constant() const;

    struct Node;  // implementation detail, opaque to callers

private:
    std::shared_ptr<const Node> root_;
    explicit EntryExpr(std::shared_ptr<const Node> root);
};

}  // namespace bratteli
