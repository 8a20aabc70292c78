#include "bratteli/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "bratteli/simplex.hpp"

namespace bratteli {

namespace {

// Boolean reachability closure of the positive-entry digraph, reflexive.
std::vector<std::vector<bool>> vertex_closure(const IntMatrix& a) {
    const std::size_t k = a.rows();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (std::size_t v = 0; v < k; ++v) {
        reach[v][v] = true;
        for (std::size_t w = 0; w < k; ++w)
            if (a(v, w) > 0) reach[v][w] = true;
    }
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t v = 0; v < k; ++v) {
            if (!reach[v][m]) continue;
            for (std::size_t w = 0; w < k; ++w)
                if (reach[m][w]) reach[v][w] = true;
        }
    return reach;
}

struct PowerEstimate {
    double value = 0.0;
    double residual = 0.0;
    std::vector<double> vec;
};

// Perron root of a nonnegative irreducible matrix by power iteration on the
// transpose of A + I (the shift keeps periodic classes convergent); returns
// the root of A itself and the left eigenvector estimate.
PowerEstimate power_radius(const IntMatrix& a) {
    const std::size_t k = a.rows();
    std::vector<double> num(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            num[i * k + j] = a(i, j).get_d() + (i == j ? 1.0 : 0.0);

    std::vector<double> v(k, 1.0 / static_cast<double>(k)), u(k);
    PowerEstimate out;
    for (std::size_t iter = 0; iter < 200000; ++iter) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < k; ++i) s += num[i * k + j] * v[i];
            u[j] = s;
        }
        double lam = 0.0;
        for (double x : u) lam = std::max(lam, std::fabs(x));
        if (lam == 0.0)
            throw Error(ErrorKind::numeric, "power iteration collapsed to zero");
        double res = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            res = std::max(res, std::fabs(u[j] - lam * v[j]));
        res /= lam;
        for (std::size_t j = 0; j < k; ++j) v[j] = u[j] / lam;
        if (res <= 1e-12) {
            out.value = lam - 1.0;
            out.residual = res;
            out.vec = v;
            return out;
        }
    }
    throw Error(ErrorKind::numeric, "power iteration did not converge");
}

// det(A - rI) = 0 certifies r as an eigenvalue; for the Perron root it pins
// the exact value.
std::optional<Int> certify_integer_root(const IntMatrix& a, double estimate) {
    const double r = std::round(estimate);
    if (r < 0.0 || std::fabs(estimate - r) > 1e-6) return std::nullopt;
    Int ri(static_cast<long>(r));
    IntMatrix shifted = a;
    for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= ri;
    if (determinant(shifted) == 0) return ri;
    return std::nullopt;
}

IntMatrix restrict_square(const IntMatrix& a, const std::vector<std::size_t>& idx) {
    IntMatrix out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            out(i, j) = a(idx[i], idx[j]);
    return out;
}

// The repeated incidence matrix of a diagram whose levels all share one.
IntMatrix repeated_matrix(const Diagram& d) {
    if (d.depth() < 2)
        throw Error(ErrorKind::refused,
                    "stationary analysis needs depth at least 2");
    const IntMatrix& a = d.incidence(1);
    for (std::size_t n = 2; n < d.depth(); ++n)
        if (!(d.incidence(n) == a))
            throw Error(ErrorKind::refused,
                        "stationary analysis needs one repeated incidence matrix");
    if (a.rows() != a.cols())
        throw Error(ErrorKind::refused,
                    "stationary analysis needs a square incidence matrix");
    return a;
}

std::vector<bool> support_pattern(const RatVec& v) {
    std::vector<bool> s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] > 0;
    return s;
}

}  // namespace

const char* standing_name(ClassStanding s) {
    switch (s) {
    case ClassStanding::dominant: return "dominant";
    case ClassStanding::not_dominant: return "not-dominant";
    case ClassStanding::indeterminate: return "indeterminate";
    }
    return "unknown";
}

ClassGraph class_graph(const IntMatrix& matrix) {
    if (matrix.rows() != matrix.cols())
        throw Error(ErrorKind::invalid_diagram, "class graph needs a square matrix");
    if (matrix.rows() == 0)
        throw Error(ErrorKind::invalid_diagram, "class graph needs a nonempty matrix");
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j)
            if (matrix(i, j) < 0)
                throw Error(ErrorKind::invalid_diagram,
                            "class graph needs a nonnegative matrix");

    const std::size_t k = matrix.rows();
    const auto reach = vertex_closure(matrix);

    ClassGraph g;
    g.matrix = matrix;
    std::vector<std::size_t> class_of(k, k);
    for (std::size_t v = 0; v < k; ++v) {
        if (class_of[v] != k) continue;
        VertexClass cls;
        for (std::size_t w = v; w < k; ++w)
            if (class_of[w] == k && reach[v][w] && reach[w][v]) {
                class_of[w] = g.classes.size();
                cls.vertices.push_back(w);
            }
        cls.submatrix = restrict_square(matrix, cls.vertices);
        PowerEstimate est = power_radius(cls.submatrix);
        cls.radius = est.value;
        cls.residual = est.residual;
        cls.exact_radius = certify_integer_root(cls.submatrix, est.value);
        if (cls.exact_radius) cls.radius = cls.exact_radius->get_d();
        g.classes.push_back(std::move(cls));
    }

    const std::size_t m = g.classes.size();
    g.reaches.assign(m, std::vector<bool>(m, false));
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t w = 0; w < k; ++w)
            if (reach[v][w]) g.reaches[class_of[v]][class_of[w]] = true;
    return g;
}

DominanceReport distinguished_classes(const ClassGraph& graph, double tol) {
    DominanceReport report;
    for (std::size_t a = 0; a < graph.classes.size(); ++a) {
        ClassVerdict v;
        v.class_index = a;
        for (std::size_t b = 0; b < graph.classes.size(); ++b) {
            if (b == a || !graph.reaches[a][b]) continue;
            const VertexClass& ca = graph.classes[a];
            const VertexClass& cb = graph.classes[b];
            if (ca.exact_radius && cb.exact_radius) {
                if (*ca.exact_radius > *cb.exact_radius) continue;
                v.standing = ClassStanding::not_dominant;
                v.note = "radius does not exceed class " + std::to_string(b) +
                         " (exact comparison)";
                break;
            }
            const double diff = ca.radius - cb.radius;
            if (diff > tol) continue;
            if (diff < -tol) {
                v.standing = ClassStanding::not_dominant;
                v.note = "radius below class " + std::to_string(b);
            } else {
                v.standing = ClassStanding::indeterminate;
                v.note = "radius within tolerance of class " + std::to_string(b);
            }
            break;
        }
        if (v.standing == ClassStanding::dominant)
            v.note = "radius exceeds every reached class";
        if (v.standing == ClassStanding::dominant)
            report.dominant.push_back(a);
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

StationaryMeasure distinguished_measure(const Diagram& d, std::size_t class_index,
                                        double tol) {
    const IntMatrix a = repeated_matrix(d);
    const ClassGraph graph = class_graph(a);
    if (class_index >= graph.classes.size())
        throw Error(ErrorKind::range, "class index out of range");
    const DominanceReport dom = distinguished_classes(graph, tol);
    const ClassVerdict& verdict = dom.verdicts[class_index];
    if (verdict.standing != ClassStanding::dominant)
        throw Error(ErrorKind::refused,
                    "class " + std::to_string(class_index) +
                        " is not distinguished: " + verdict.note);

    // Support: vertices of every class reachable from this one.
    std::vector<std::size_t> support;
    for (std::size_t b = 0; b < graph.classes.size(); ++b)
        if (graph.reaches[class_index][b])
            support.insert(support.end(), graph.classes[b].vertices.begin(),
                           graph.classes[b].vertices.end());
    std::sort(support.begin(), support.end());

    const IntMatrix ar = restrict_square(a, support);
    const std::size_t k = support.size();
    const VertexClass& cls = graph.classes[class_index];

    StationaryMeasure out;
    out.class_index = class_index;

    RatVec xr(k);
    if (cls.exact_radius) {
        out.exact = true;
        out.radius = Rat(*cls.exact_radius);
        // Left eigenvectors of ar are the nullspace of (ar^T - rI).
        RatMatrix shifted(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                shifted(i, j) = Rat(ar(j, i)) - (i == j ? out.radius : Rat(0));
        const auto basis = nullspace(shifted);
        if (basis.size() != 1)
            throw Error(ErrorKind::numeric,
                        "eigenvector at the class radius is not unique on the support");
        xr = basis[0];
        std::size_t lead = k;
        for (std::size_t i = 0; i < k && lead == k; ++i)
            if (xr[i] != 0) lead = i;
        if (lead < k && xr[lead] < 0)
            for (Rat& q : xr) q = -q;
    } else {
        out.exact = false;
        PowerEstimate est = power_radius(ar);
        if (est.vec.size() != k)
            throw Error(ErrorKind::numeric, "eigenvector estimate has a wrong shape");
        out.radius = Rat(est.value);
        for (std::size_t i = 0; i < k; ++i) xr[i] = Rat(est.vec[i]);
    }
    for (const Rat& q : xr)
        if (q <= 0)
            throw Error(ErrorKind::numeric,
                        "eigenvector is not positive on the support");

    out.x.assign(a.rows(), Rat(0));
    for (std::size_t i = 0; i < k; ++i) out.x[support[i]] = xr[i];

    const IntVec& h1 = d.heights(1);
    Rat scale(0);
    for (std::size_t v = 0; v < out.x.size(); ++v) scale += out.x[v] * Rat(h1[v]);
    if (scale <= 0)
        throw Error(ErrorKind::numeric, "eigenvector normalization failed");
    for (Rat& q : out.x) q /= scale;

    out.residual = 0;
    for (std::size_t vtx = 0; vtx < a.rows(); ++vtx) {
        Rat lhs(0);
        for (std::size_t u = 0; u < a.rows(); ++u)
            lhs += out.x[u] * Rat(a(u, vtx));
        Rat diff = lhs - out.radius * out.x[vtx];
        if (diff < 0) diff = -diff;
        if (diff > out.residual) out.residual = diff;
    }

    Rat power(1);
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        const IntVec& h = d.heights(n);
        RatVec q(h.size());
        for (std::size_t v = 0; v < h.size(); ++v) {
            q[v] = out.x[v] * Rat(h[v]) / power;
            guard_size(q[v]);
        }
        out.trace.push_back(std::move(q));
        power *= out.radius;
    }
    return out;
}

std::vector<StationaryMeasure> stationary_measures(const Diagram& d, double tol) {
    const IntMatrix a = repeated_matrix(d);
    const ClassGraph graph = class_graph(a);
    const DominanceReport dom = distinguished_classes(graph, tol);
    for (const ClassVerdict& v : dom.verdicts)
        if (v.standing == ClassStanding::indeterminate)
            throw Error(ErrorKind::refused,
                        "dominance of class " + std::to_string(v.class_index) +
                            " is indeterminate: " + v.note);
    std::vector<StationaryMeasure> out;
    for (std::size_t idx : dom.dominant)
        out.push_back(distinguished_measure(d, idx, tol));
    return out;
}

CrossCheck cross_validate(const Diagram& d, std::size_t depth_m,
                          const Rat& gap_ratio, double tol) {
    const auto measures = stationary_measures(d, tol);
    const TraceSet limit = trace_from_limit(d, 1, depth_m, gap_ratio);

    CrossCheck out;
    out.measure_count = measures.size();
    out.cluster_count = limit.clustering.clusters.size();
    out.counts_match = out.measure_count == out.cluster_count;
    out.supports_match = out.counts_match;
    out.max_discrepancy = 0;
    for (const StationaryMeasure& m : measures) {
        std::size_t best = limit.traces.size();
        Rat best_gap;
        for (std::size_t c = 0; c < limit.traces.size(); ++c) {
            Rat gap = dstar(m.trace[0], limit.traces[c][0]);
            if (best == limit.traces.size() || gap < best_gap) {
                best = c;
                best_gap = gap;
            }
        }
        if (best == limit.traces.size()) {
            out.supports_match = false;
            continue;
        }
        if (best_gap > out.max_discrepancy) out.max_discrepancy = best_gap;
        // Finite-stage centroids may carry transient mass outside the limit
        // support, but can never vanish where the measure is positive.
        const auto ms = support_pattern(m.trace[0]);
        const auto cs = support_pattern(limit.traces[best][0]);
        for (std::size_t v = 0; v < ms.size(); ++v)
            if (ms[v] && !cs[v]) out.supports_match = false;
    }
    return out;
}

}  // namespace bratteli
