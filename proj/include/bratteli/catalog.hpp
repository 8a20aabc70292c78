#pragma once

#include <string>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/toeplitz.hpp"

namespace bratteli {

// A checkable claim about a catalog entry: `check` names the built-in
// verification routine that verify_entry dispatches on, `statement` is the
// claim it establishes.  Every fact of every built-in entry passes its check
// at the entry's declared depth; the regression suite runs them all.
struct CatalogFact {
    std::string check;
    std::string statement;
};

// Named reference diagram with its generating spec, the depth at which the
// exact analyses are run, and the facts known to hold there.
struct CatalogEntry {
    std::string name;
    std::string summary;
    std::size_t depth = 0;
    DiagramSpec spec;
    std::vector<CatalogFact> facts;
};

// Two-vertex symmetric families with linear resp. quadratic diagonal
// growth: the first contracts to a unique measure, the second keeps the
// contraction gap above 1/2 forever and carries exactly two measures.
CatalogEntry example_b1();
CatalogEntry example_b2();

// One repeated matrix [[3,0],[1,2]] with root edges (3,3): the dominant
// class is the embedded 3-adic odometer and the unique measure has the
// constant unit trace (1,0).
CatalogEntry stationary_3odometer();

// Triangular array with unit bidiagonal incidence; its ergodic measures are
// the exact binomial traces below.
CatalogEntry pascal_entry();

// Exact level-n masses q_i = C(n,i) p^i (1-p)^(n-i) of the binomial measure
// on the triangular array, and the full trace for levels 1..depth.
// Requires 0 < p < 1.
RatVec pascal_trace(const Rat& p, std::size_t n);
std::vector<RatVec> pascal_measure(const Rat& p, std::size_t depth);

// Growing-rank family adding one vertex per level with diagonal rule a_n.
// Admitted only when the escape series sum n/(a_n + n) carries a closed-form
// convergence certificate (degree-gap comparison); otherwise refused with a
// diagnostic.  The default entry uses a_n = n^3 + 2.
CatalogEntry countable_example(const EntryExpr& a_rule, std::size_t depth = 12);

// Diagram read off a Toeplitz block seed (the copy rule and fills live in
// the seed); validated by building the stages, so inconsistent seeds are
// rejected with the builder's diagnostic.
CatalogEntry ers_toeplitz(const ToeplitzSeed& seed, std::size_t depth);

// The fixed built-in entries, their names, and lookup by name
// (ErrorKind::range on an unknown name).
const std::vector<CatalogEntry>& catalog();
std::vector<std::string> catalog_names();
const CatalogEntry& catalog_entry(const std::string& name);

// Outcome of one designated check.
struct FactResult {
    CatalogFact fact;
    bool passed = false;
    std::string detail;
};

// Materialize the entry and run every fact's designated check; throws
// ErrorKind::range on a check id no routine implements.
std::vector<FactResult> verify_entry(const CatalogEntry& entry);

}  // namespace bratteli
