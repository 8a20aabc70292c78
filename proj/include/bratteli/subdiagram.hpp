#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/ergodicity.hpp"
#include "bratteli/series.hpp"

namespace bratteli {

// Vertex subdiagram: the kept vertex subsets W_n per level and the diagram
// they induce (restricted incidence matrices, root edges at W_1, recomputed
// heights h').
struct VertexSubdiagram {
    LevelSets sets;
    Diagram restricted;
};

// Restriction of a diagram to per-level vertex subsets.  Every level must
// keep at least one vertex, at least one level must drop one, and no kept
// vertex may lose all its edges on either side (that would break the
// diagram property; the error names the offending level and vertex).
VertexSubdiagram restrict_diagram(const Diagram& d, const LevelSets& sets);

// Finiteness of measure extension off the subdiagram: any invariant measure
// of the subdiagram extends to a finite one on the whole diagram once the
// series of worst per-level escape masses t_n = max over v in W_{n+1} of
// the F_n row mass leaving W_n is summable.  Certified only by an exactly
// zero sequence or a closed-form convergence certificate; window evidence
// alone leaves the verdict undetermined.
struct ExtensionFiniteness {
    Verdict verdict = Verdict::undetermined;
    std::vector<Rat> terms;  // t_n for 1 <= n <= depth-1
    SeriesAssessment series;
    std::string note;
};

ExtensionFiniteness extension_finiteness(const Diagram& d, const LevelSets& sets,
                                         std::size_t window);

// Saturation masses of the canonical extension of a measure from the
// restricted diagram to the whole one: M_N = sum over v in W_N of
// (h_v^(N) / h'_v^(N)) q'_v^(N), exact and nondecreasing in N.  The trace
// q' must be exactly tail-compatible on the restricted diagram.
struct ExtensionMass {
    std::vector<Rat> masses;        // M_1 .. M_depth
    Verdict finiteness = Verdict::undetermined;  // escape-series verdict
    bool diverging_evidence = false;  // last 5 ratios each exceed 1 + 1/N
};

ExtensionMass extension_mass(const Diagram& d, const LevelSets& sets,
                             const std::vector<RatVec>& sub_trace,
                             std::size_t depth, std::size_t window = 6);

// Nested block structure for chains: blocks[n-1] lists disjoint vertex
// blocks of level n (coverage of the level is not required), and
// links[n-1][j] names the level-n block that block j of level n+1 follows.
struct ChainStructure {
    std::vector<std::vector<std::vector<std::size_t>>> blocks;
    std::vector<std::vector<std::size_t>> links;
};

// The structure read off a chain search: its per-level clusters, joined by
// the dominant-mass parent rule.
ChainStructure chain_structure(const Diagram& d, const ChainSearchResult& search);

// The vertex subdiagram following one chain through the structure:
// W_n = blocks[n-1][chain[n-1]].  The chain must follow the links.
VertexSubdiagram chain_subdiagram(const Diagram& d, const ChainStructure& structure,
                                  const std::vector<std::size_t>& chain);

}  // namespace bratteli
