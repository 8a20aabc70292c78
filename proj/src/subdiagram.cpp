#include "bratteli/subdiagram.hpp"

#include <algorithm>
#include <numeric>

#include "bratteli/simplex.hpp"

namespace bratteli {

namespace {

std::vector<std::size_t> term_levels(std::size_t depth) {
    std::vector<std::size_t> levels(depth - 1);
    std::iota(levels.begin(), levels.end(), 1);
    return levels;
}

// Disjoint, sorted, in-range nonempty blocks per level; coverage optional.
void check_structure(const Diagram& d, const ChainStructure& s) {
    if (s.blocks.size() != d.depth())
        throw Error(ErrorKind::invalid_spec,
                    "chain structure needs one block list per level");
    if (s.links.size() + 1 != d.depth())
        throw Error(ErrorKind::invalid_spec,
                    "chain structure needs one link table per level step");
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        const auto& level = s.blocks[n - 1];
        if (level.empty())
            throw Error(ErrorKind::invalid_spec,
                        "chain structure has no blocks at level " + std::to_string(n));
        std::vector<bool> seen(d.num_vertices(n), false);
        for (const auto& b : level) {
            if (b.empty())
                throw Error(ErrorKind::invalid_spec,
                            "empty block at level " + std::to_string(n));
            if (!std::is_sorted(b.begin(), b.end()))
                throw Error(ErrorKind::invalid_spec,
                            "unsorted block at level " + std::to_string(n));
            for (std::size_t v : b) {
                if (v >= seen.size())
                    throw Error(ErrorKind::invalid_spec,
                                "block exceeds the width of level " + std::to_string(n));
                if (seen[v])
                    throw Error(ErrorKind::invalid_spec,
                                "blocks overlap at level " + std::to_string(n));
                seen[v] = true;
            }
        }
    }
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        if (s.links[n - 1].size() != s.blocks[n].size())
            throw Error(ErrorKind::invalid_spec,
                        "link table size mismatch at level " + std::to_string(n + 1));
        for (std::size_t p : s.links[n - 1])
            if (p >= s.blocks[n - 1].size())
                throw Error(ErrorKind::invalid_spec,
                            "link target out of range at level " + std::to_string(n + 1));
    }
}

}  // namespace

VertexSubdiagram restrict_diagram(const Diagram& d, const LevelSets& sets) {
    if (sets.size() != d.depth())
        throw Error(ErrorKind::invalid_spec,
                    "restriction needs one vertex set per level");
    LevelSets w = sets;
    bool proper = false;
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        auto& s = w[n - 1];
        if (s.empty())
            throw Error(ErrorKind::invalid_spec,
                        "empty vertex set at level " + std::to_string(n));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorKind::invalid_spec,
                        "repeated vertex at level " + std::to_string(n));
        if (s.back() >= d.num_vertices(n))
            throw Error(ErrorKind::invalid_spec,
                        "vertex set exceeds the width of level " + std::to_string(n));
        if (s.size() < d.num_vertices(n)) proper = true;
    }
    if (!proper)
        throw Error(ErrorKind::invalid_spec,
                    "restriction keeps every vertex of every level");

    std::vector<IntMatrix> inc;
    IntVec root = d.root_edges();
    IntMatrix rc(w[0].size(), 1);
    for (std::size_t i = 0; i < w[0].size(); ++i) rc(i, 0) = root[w[0][i]];
    inc.push_back(std::move(rc));

    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        const IntMatrix& f = d.incidence(n);
        IntMatrix g(w[n].size(), w[n - 1].size());
        for (std::size_t i = 0; i < w[n].size(); ++i)
            for (std::size_t j = 0; j < w[n - 1].size(); ++j)
                g(i, j) = f(w[n][i], w[n - 1][j]);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            bool hit = false;
            for (std::size_t j = 0; j < g.cols(); ++j)
                if (g(i, j) > 0) hit = true;
            if (!hit)
                throw Error(ErrorKind::invalid_diagram,
                            "restriction drops every kept edge into vertex " +
                                std::to_string(w[n][i]) + " of level " +
                                std::to_string(n + 1));
        }
        for (std::size_t j = 0; j < g.cols(); ++j) {
            bool hit = false;
            for (std::size_t i = 0; i < g.rows(); ++i)
                if (g(i, j) > 0) hit = true;
            if (!hit)
                throw Error(ErrorKind::invalid_diagram,
                            "restriction drops every kept edge out of vertex " +
                                std::to_string(w[n - 1][j]) + " of level " +
                                std::to_string(n));
        }
        inc.push_back(std::move(g));
    }
    return VertexSubdiagram{std::move(w), Diagram(std::move(inc))};
}

ExtensionFiniteness extension_finiteness(const Diagram& d, const LevelSets& sets,
                                         std::size_t window) {
    VertexSubdiagram sub = restrict_diagram(d, sets);
    if (window < 1)
        throw Error(ErrorKind::range, "window must be at least 1");

    ExtensionFiniteness out;
    out.terms = escape_terms_of(d, sub.sets);
    out.series = assess_series(term_levels(d.depth()), out.terms, window,
                               escape_symbolic(d, sub.sets));
    if (out.series.status == SeqStatus::exact_zero) {
        out.verdict = Verdict::certified;
        out.note = "no mass ever escapes the kept vertices";
    } else if (out.series.status == SeqStatus::certified && out.series.convergent) {
        out.verdict = Verdict::certified;
        out.note = "escape series has a convergence certificate";
    } else if (out.series.status == SeqStatus::certified && !out.series.convergent) {
        out.verdict = Verdict::undetermined;
        out.note = "escape series is certified divergent; the extension "
                   "carries unbounded mass";
    } else if (out.series.status == SeqStatus::evidence && out.series.convergent) {
        out.verdict = Verdict::undetermined;
        out.note = "escape terms shrink geometrically on the window, but no "
                   "closed form certifies the tail";
    } else {
        out.verdict = Verdict::undetermined;
        out.note = "escape series not resolved; partial sums reported";
    }
    return out;
}

ExtensionMass extension_mass(const Diagram& d, const LevelSets& sets,
                             const std::vector<RatVec>& sub_trace,
                             std::size_t depth, std::size_t window) {
    VertexSubdiagram sub = restrict_diagram(d, sets);
    if (depth < 1 || depth > d.depth())
        throw Error(ErrorKind::range, "mass depth must lie in 1..depth");

    if (sub_trace.size() != d.depth())
        throw Error(ErrorKind::invalid_spec,
                    "trace needs one vector per subdiagram level");
    for (std::size_t n = 1; n <= d.depth(); ++n)
        if (sub_trace[n - 1].size() != sub.sets[n - 1].size())
            throw Error(ErrorKind::invalid_spec,
                        "trace width does not match the kept vertices at level " +
                            std::to_string(n));
    TraceCheck tc = verify_trace(sub.restricted, sub_trace);
    if (tc.residual != 0 || !tc.nonnegative || !tc.normalized)
        throw Error(ErrorKind::refused,
                    "extension mass needs an exactly tail-compatible "
                    "probability trace on the restricted diagram");

    ExtensionMass out;
    for (std::size_t n = 1; n <= depth; ++n) {
        const IntVec& h = d.heights(n);
        const IntVec& hs = sub.restricted.heights(n);
        Rat mass(0);
        for (std::size_t i = 0; i < sub.sets[n - 1].size(); ++i)
            mass += Rat(h[sub.sets[n - 1][i]]) / Rat(hs[i]) * sub_trace[n - 1][i];
        guard_size(mass);
        if (!out.masses.empty() && mass < out.masses.back())
            throw Error(ErrorKind::numeric,
                        "extension masses decreased at level " + std::to_string(n));
        out.masses.push_back(std::move(mass));
    }

    out.finiteness = extension_finiteness(d, sets, window).verdict;
    // Purely heuristic divergence flag: the last 5 growth ratios all clear
    // the harmonic hurdle 1 + 1/N.
    if (out.masses.size() >= 6) {
        out.diverging_evidence = true;
        for (std::size_t n = out.masses.size() - 5; n < out.masses.size(); ++n) {
            // Ratio M_{n+1}/M_n against 1 + 1/n, with 1-based n = index.
            Rat hurdle = Rat(1) + Rat(Int(1), Int(static_cast<unsigned long>(n)));
            if (!(out.masses[n] / out.masses[n - 1] > hurdle))
                out.diverging_evidence = false;
        }
    }
    return out;
}

ChainStructure chain_structure(const Diagram& d, const ChainSearchResult& search) {
    ChainStructure s;
    s.blocks = search.level_blocks;
    s.links = dominant_parents(d, s.blocks);
    return s;
}

VertexSubdiagram chain_subdiagram(const Diagram& d, const ChainStructure& structure,
                                  const std::vector<std::size_t>& chain) {
    check_structure(d, structure);
    if (chain.size() != d.depth())
        throw Error(ErrorKind::invalid_spec,
                    "chain needs one block index per level");
    LevelSets sets(d.depth());
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        if (chain[n - 1] >= structure.blocks[n - 1].size())
            throw Error(ErrorKind::invalid_spec,
                        "chain index out of range at level " + std::to_string(n));
        if (n >= 2 && structure.links[n - 2][chain[n - 1]] != chain[n - 2])
            throw Error(ErrorKind::invalid_spec,
                        "chain violates the successor map at level " +
                            std::to_string(n));
        sets[n - 1] = structure.blocks[n - 1][chain[n - 1]];
    }
    return restrict_diagram(d, sets);
}

}  // namespace bratteli
