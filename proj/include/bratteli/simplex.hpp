#pragma once

#include <vector>

#include "bratteli/diagram.hpp"

namespace bratteli {

// G_(n+m, n) = F_{n+m} ··· F_n: row-stochastic, rows indexed by V_{n+m+1},
// columns by V_n.  Requires 1 <= n and n+m <= depth-1.
RatMatrix product_matrix(const Diagram& d, std::size_t n, std::size_t m);

// Vertices of the level-n candidate polytope seen from level n+m: for m = 0
// the standard simplex corners, otherwise the rows of G_(n+m-1, n).
// points[v] is generated by vertex v of V_{n+m}.
struct Polytope {
    std::size_t level;       // n
    std::size_t from_level;  // n + m
    std::vector<RatVec> points;
};

Polytope polytope(const Diagram& d, std::size_t n, std::size_t m);

// max pairwise d* distance
Rat diameter_dstar(const std::vector<RatVec>& points);

// max pairwise d* distance between rows; the contraction gap of a
// row-stochastic matrix
Rat row_gap(const RatMatrix& m);

// Single-linkage components at the absolute scale 2/gap_ratio (d* diameter of
// the full simplex divided by the ratio).  The separated flag asks for a
// scale-free quality margin: every inter-cluster distance must exceed
// gap_ratio times every intra-cluster diameter (trivially true for a single
// cluster).
struct Clustering {
    std::vector<std::vector<std::size_t>> clusters;  // sorted member indices
    bool separated;
    Rat max_intra;  // largest intra-cluster pairwise distance
    Rat min_inter;  // smallest inter-cluster pairwise distance (0 if l = 1)
};

Clustering cluster_extremes(const std::vector<RatVec>& points, const Rat& gap_ratio);

// Tail-compatibility of a level-indexed family q^(1..L): residual is the
// worst d* defect of q^(n) = q^(n+1) F_n; trace[i] lives on V_{i+1}.
struct TraceCheck {
    Rat residual;
    bool nonnegative;
    bool normalized;  // every level sums to exactly 1
};

TraceCheck verify_trace(const Diagram& d, const std::vector<RatVec>& trace);

// Candidate ergodic traces read off the limit: rows of G_(H-1, n) for the
// head H = level + m are clustered once at the reference level, and each
// cluster's running centroid is propagated down to every level 1..level.
// Centroids of the same member set are exactly tail-compatible.  Refuses
// (ErrorKind::refused) when the reference-level clustering is not separated.
struct TraceSet {
    std::size_t head;   // H: generating level of the points
    std::size_t level;  // reference level used for clustering
    Clustering clustering;
    // traces[c][n-1]: level-n vector of cluster c, for 1 <= n <= level
    std::vector<std::vector<RatVec>> traces;
    // spread[c][n-1]: max d* among the member rows at level n
    std::vector<std::vector<Rat>> spread;
};

TraceSet trace_from_limit(const Diagram& d, std::size_t level, std::size_t m,
                          const Rat& gap_ratio);

// Exact affine decomposition of target over points with coefficients summing
// to one; convex additionally requires all coefficients >= 0.
struct Decomposition {
    bool solved;
    RatVec coefficients;
    bool convex;
};

Decomposition decompose_point(const RatVec& target, const std::vector<RatVec>& points);

}  // namespace bratteli
