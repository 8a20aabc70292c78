#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bratteli/diagram.hpp"

namespace bratteli {

// Communicating class of a square nonnegative matrix: sorted member
// vertices, the induced submatrix, and its Perron root.  The float estimate
// carries the iteration residual; exact_radius is set when the root is
// certified to be an integer (det(A - rI) = 0 exactly), which covers every
// rational case since the characteristic polynomial is monic over Z.
struct VertexClass {
    std::vector<std::size_t> vertices;
    IntMatrix submatrix;
    double radius = 0.0;
    double residual = 0.0;
    std::optional<Int> exact_radius;
};

// Communicating classes with their reachability order.  Edges run v -> w
// when the (v, w) entry is positive; reaches[a][b] holds when some vertex of
// class a has a path (possibly empty) to some vertex of class b.
struct ClassGraph {
    IntMatrix matrix;
    std::vector<VertexClass> classes;
    std::vector<std::vector<bool>> reaches;
};

ClassGraph class_graph(const IntMatrix& matrix);

// Standing of a class under the dominance test: dominant when its root is
// strictly larger than the root of every other class it reaches,
// not_dominant when some reached class is at least as large, indeterminate
// when a float comparison lands inside the tolerance margin.
enum class ClassStanding { dominant, not_dominant, indeterminate };

const char* standing_name(ClassStanding s);

struct ClassVerdict {
    std::size_t class_index = 0;
    ClassStanding standing = ClassStanding::dominant;
    std::string note;
};

struct DominanceReport {
    std::vector<ClassVerdict> verdicts;     // one per class, in class order
    std::vector<std::size_t> dominant;      // indices of dominant classes
};

// Radii are compared exactly whenever both are certified integers, otherwise
// by the float estimates with `tol` as the indistinguishability margin; a
// margin hit is reported explicitly, never resolved silently.
DominanceReport distinguished_classes(const ClassGraph& graph, double tol = 1e-9);

// Ergodic tail-invariant measure attached to a dominant class of a diagram
// with one repeated incidence matrix: a left eigenvector x at the class
// radius r, supported exactly on the vertices reachable from the class,
// normalized so that x . h^(1) = 1, with level masses
// q_v^(n) = x_v h_v^(n) / r^(n-1).
struct StationaryMeasure {
    std::size_t class_index = 0;
    bool exact = false;     // eigenvector solved exactly over the rationals
    Rat radius;             // integer when exact, float-derived otherwise
    RatVec x;               // full-width eigenvector, zero off the support
    Rat residual;           // worst |(x A - r x)_v| after normalization
    std::vector<RatVec> trace;  // trace[n-1] = q^(n), 1 <= n <= depth
};

StationaryMeasure distinguished_measure(const Diagram& d, std::size_t class_index,
                                        double tol = 1e-9);

// Measures of all dominant classes, in class order.  Refuses when any
// dominance verdict is indeterminate, since the list could be incomplete.
std::vector<StationaryMeasure> stationary_measures(const Diagram& d,
                                                   double tol = 1e-9);

// Agreement between the eigenvector route and the limit-of-products route:
// counts, supports (each measure's support must be covered by its nearest
// centroid's), and the worst d* gap between each measure's first-level
// vector and that centroid.
struct CrossCheck {
    std::size_t measure_count = 0;
    std::size_t cluster_count = 0;
    bool counts_match = false;
    bool supports_match = false;
    Rat max_discrepancy;
};

CrossCheck cross_validate(const Diagram& d, std::size_t depth_m,
                          const Rat& gap_ratio = Rat(4), double tol = 1e-9);

}  // namespace bratteli
