#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/matrix.hpp"

namespace bratteli {

// Finite path from the root to level `vertices.size()`: vertices[i] is the
// level-(i+1) vertex and edges[i] the position of the path's edge into it
// within that vertex's incoming-edge order (edge_sources).  For i >= 1 the
// source of edge i must be vertices[i-1].
struct FinitePath {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;

    std::size_t level() const { return vertices.size(); }
    std::size_t top() const { return vertices.back(); }
    bool operator==(const FinitePath&) const = default;
};

void validate_path(const Diagram& d, const FinitePath& p);

// Rebuild the diagram with the given incoming-edge orders; the constructor
// checks every list against the vertex's edge multiset.  An empty map keeps
// the default order (sources ascending, multiplicities grouped).
Diagram with_order(const Diagram& d, OrderMap order);

// Same, but additionally requires every order list -- given or default -- to
// keep edges with equal sources contiguous, the shape produced by
// enumerating each vertex's incoming edges source by source.
Diagram consecutive_order(const Diagram& d, OrderMap order = {});

// The extremal paths of the tower over `vertex` at `level`: every edge
// minimal (resp. maximal) in its incoming-edge order.
FinitePath min_path(const Diagram& d, std::size_t level, std::size_t vertex);
FinitePath max_path(const Diagram& d, std::size_t level, std::size_t vertex);

// Adic successor among the paths from the root to p's top vertex: advance
// the lowest non-maximal edge and reset every edge below it to minimal.
// nullopt signals that p is the maximal path of its tower.  The predecessor
// is the order dual; neither wraps around.
std::optional<FinitePath> vershik_successor(const Diagram& d,
                                            const FinitePath& p);
std::optional<FinitePath> vershik_predecessor(const Diagram& d,
                                              const FinitePath& p);

// Position of p in the adic enumeration of its tower, 0 .. h_top - 1, and
// the inverse construction.
Int path_rank(const Diagram& d, const FinitePath& p);
FinitePath path_from_rank(const Diagram& d, std::size_t level,
                          std::size_t vertex, Int rank);

// The symbol of p in the level-n0 path alphabet: towers at level n0 are
// numbered vertex by vertex, each enumerating its own paths adically, so
// the truncation of p to level n0 gets a global index below the alphabet
// size s = sum of the level-n0 heights.
std::size_t path_symbol(const Diagram& d, std::size_t n0, const FinitePath& p);
std::size_t alphabet_size(const Diagram& d, std::size_t n0);

// How many infinite minimal/maximal paths are visible at the materialized
// depth: follow every top vertex downward along its minimal (maximal) edge
// and count the distinct level-1 images.  `stable` records whether both
// image counts already hold on the lower half of the levels; `rollover`
// pairs each maximal path with the minimal path the adic map sends it to,
// which the finite stage pins down only in the proper case (one of each).
struct ExtremeCount {
    std::size_t minimal = 0;
    std::size_t maximal = 0;
    bool stable = false;
    std::vector<std::size_t> rollover;
};

ExtremeCount count_extremes(const Diagram& d);

// Tower words over the level-n0 path alphabet: the base family spells each
// level-n0 tower as its own symbols in adic order, and the family one level
// up concatenates the lower words along the incoming-edge order, so
// |words[v]| is always the height of v.  pieces[v] records the last
// concatenation step -- the sequence of level-(n-1) vertices whose words
// spell words[v]; the base family has none.
struct BlockFamily {
    std::size_t base_level = 0;
    std::size_t level = 0;
    std::size_t alphabet = 0;
    std::vector<std::vector<std::size_t>> words;   // indexed by level vertex
    std::vector<std::vector<std::size_t>> pieces;  // empty at the base level
};

BlockFamily blocks(const Diagram& d, std::size_t n0, std::size_t n);

// Recover the incidence matrix between two consecutive families by counting
// which lower words each upper word concatenates.  Vertices whose lower
// words coincide cannot be told apart by symbols alone, so the columns
// quotient onto distinct words; `classes` lists the vertices behind each
// column and `quotient` flags a genuine merge.  With pairwise distinct
// lower words this returns the diagram's incidence matrix exactly.
struct RecoveredIncidence {
    IntMatrix matrix;
    bool quotient = false;
    std::vector<std::vector<std::size_t>> classes;
};

RecoveredIncidence incidence_from_blocks(const BlockFamily& lower,
                                         const BlockFamily& upper);

// Orbit coding through the level-n0 alphabet: the word of `count` symbols
// read forward from `start` along adic successors, or the window of
// 2*radius+1 symbols centered at `start` (extended to the materialized
// depth along minimal edges).  Windows that leave the materialized tower
// raise a range error naming the largest feasible size.
std::vector<std::size_t> code_forward(const Diagram& d, std::size_t n0,
                                      const FinitePath& start,
                                      std::size_t count);
std::vector<std::size_t> code_orbit(const Diagram& d, std::size_t n0,
                                    const FinitePath& start,
                                    std::size_t radius);

}  // namespace bratteli
