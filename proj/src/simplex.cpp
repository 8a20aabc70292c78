#include "bratteli/simplex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bratteli {

RatMatrix product_matrix(const Diagram& d, std::size_t n, std::size_t m) {
    if (n < 1 || n + m + 1 > d.depth())
        throw Error(ErrorKind::range,
                    "product levels " + std::to_string(n) + ".." +
                        std::to_string(n + m) + " outside 1.." +
                        std::to_string(d.depth() - 1));
    RatMatrix g = d.stochastic(n);
    for (std::size_t i = n + 1; i <= n + m; ++i) g = d.stochastic(i).mul(g);
    return g;
}

Polytope polytope(const Diagram& d, std::size_t n, std::size_t m) {
    if (n < 1 || n + m > d.depth())
        throw Error(ErrorKind::range, "polytope levels out of range");
    Polytope p;
    p.level = n;
    p.from_level = n + m;
    if (m == 0) {
        std::size_t k = d.num_vertices(n);
        for (std::size_t v = 0; v < k; ++v) {
            RatVec e(k);
            e[v] = 1;
            p.points.push_back(std::move(e));
        }
        return p;
    }
    RatMatrix g = product_matrix(d, n, m - 1);
    for (std::size_t v = 0; v < g.rows(); ++v) p.points.push_back(g.row(v));
    return p;
}

Rat diameter_dstar(const std::vector<RatVec>& points) {
    Rat best = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            Rat dist = dstar(points[i], points[j]);
            if (dist > best) best = dist;
        }
    return best;
}

Rat row_gap(const RatMatrix& m) {
    std::vector<RatVec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return diameter_dstar(rows);
}

Clustering cluster_extremes(const std::vector<RatVec>& points, const Rat& gap_ratio) {
    if (points.empty())
        throw Error(ErrorKind::range, "clustering needs at least one point");
    if (gap_ratio <= 0)
        throw Error(ErrorKind::range, "gap ratio must be positive");
    std::size_t k = points.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    Rat threshold = Rat(2) / gap_ratio;
    std::vector<std::vector<Rat>> dist(k, std::vector<Rat>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            dist[i][j] = dist[j][i] = dstar(points[i], points[j]);
            if (dist[i][j] <= threshold) parent[find(i)] = find(j);
        }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < k; ++i) groups[find(i)].push_back(i);
    Clustering out;
    for (auto& [root, members] : groups) out.clusters.push_back(std::move(members));
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });

    out.max_intra = 0;
    out.min_inter = 0;
    bool first_inter = true;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (find(i) == find(j)) {
                if (dist[i][j] > out.max_intra) out.max_intra = dist[i][j];
            } else if (first_inter || dist[i][j] < out.min_inter) {
                out.min_inter = dist[i][j];
                first_inter = false;
            }
        }
    out.separated =
        out.clusters.size() == 1 || out.min_inter > gap_ratio * out.max_intra;
    return out;
}

TraceCheck verify_trace(const Diagram& d, const std::vector<RatVec>& trace) {
    if (trace.empty() || trace.size() > d.depth())
        throw Error(ErrorKind::range, "trace must cover levels 1..L within the depth");
    TraceCheck out{Rat(0), true, true};
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].size() != d.num_vertices(i + 1))
            throw Error(ErrorKind::range, "trace vector size mismatch at level " +
                                              std::to_string(i + 1));
        Rat sum = 0;
        for (const Rat& q : trace[i]) {
            if (q < 0) out.nonnegative = false;
            sum += q;
        }
        if (sum != 1) out.normalized = false;
    }
    for (std::size_t n = 1; n + 1 <= trace.size(); ++n) {
        RatVec pushed = d.stochastic(n).transpose_apply(trace[n]);
        Rat defect = dstar(trace[n - 1], pushed);
        if (defect > out.residual) out.residual = defect;
    }
    return out;
}

TraceSet trace_from_limit(const Diagram& d, std::size_t level, std::size_t m,
                          const Rat& gap_ratio) {
    if (level < 1 || m < 1 || level + m > d.depth())
        throw Error(ErrorKind::range, "trace extraction levels out of range");
    TraceSet out;
    out.level = level;
    out.head = level + m;

    RatMatrix p = product_matrix(d, level, m - 1);  // G_(H-1, level)
    std::vector<RatVec> rows;
    for (std::size_t v = 0; v < p.rows(); ++v) rows.push_back(p.row(v));
    out.clustering = cluster_extremes(rows, gap_ratio);
    if (!out.clustering.separated)
        throw Error(ErrorKind::refused,
                    "limit rows at level " + std::to_string(level) +
                        " do not separate into clusters; increase the number "
                        "of product steps or loosen the gap ratio");

    std::size_t l = out.clustering.clusters.size();
    out.traces.assign(l, std::vector<RatVec>(level));
    out.spread.assign(l, std::vector<Rat>(level));
    for (std::size_t n = level;; --n) {
        for (std::size_t c = 0; c < l; ++c) {
            const auto& members = out.clustering.clusters[c];
            RatVec centroid(p.cols());
            Rat worst = 0;
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t j = 0; j < p.cols(); ++j)
                    centroid[j] += p(members[a], j);
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    Rat dist = dstar(p.row(members[a]), p.row(members[b]));
                    if (dist > worst) worst = dist;
                }
            }
            for (Rat& q : centroid) q /= int(members.size());
            out.traces[c][n - 1] = std::move(centroid);
            out.spread[c][n - 1] = worst;
        }
        if (n == 1) break;
        p = p.mul(d.stochastic(n - 1));  // G_(H-1, n-1)
    }
    return out;
}

Decomposition decompose_point(const RatVec& target, const std::vector<RatVec>& points) {
    if (points.empty())
        throw Error(ErrorKind::range, "decomposition needs at least one point");
    std::size_t dim = target.size();
    for (const RatVec& pt : points)
        if (pt.size() != dim)
            throw Error(ErrorKind::range, "decomposition dimension mismatch");
    RatMatrix a(dim + 1, points.size());
    RatVec b(dim + 1);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t i = 0; i < points.size(); ++i) a(r, i) = points[i][r];
        b[r] = target[r];
    }
    for (std::size_t i = 0; i < points.size(); ++i) a(dim, i) = 1;
    b[dim] = 1;

    Decomposition out;
    auto x = solve_linear(a, b);
    out.solved = x.has_value();
    if (out.solved) {
        out.coefficients = *x;
        out.convex = std::all_of(out.coefficients.begin(), out.coefficients.end(),
                                 [](const Rat& q) { return q >= 0; });
    } else {
        out.convex = false;
    }
    return out;
}

}  // namespace bratteli
