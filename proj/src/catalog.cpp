#include "bratteli/catalog.hpp"

#include <algorithm>
#include <utility>

#include "bratteli/ergodicity.hpp"
#include "bratteli/error.hpp"
#include "bratteli/poly.hpp"
#include "bratteli/simplex.hpp"
#include "bratteli/stationary.hpp"
#include "bratteli/subdiagram.hpp"
#include "bratteli/symbolic.hpp"

namespace bratteli {

namespace {

Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string rats(const Rat& q) { return rat_string(q); }

FactResult pass(const CatalogFact& f, std::string detail) {
    return FactResult{f, true, std::move(detail)};
}

FactResult fail(const CatalogFact& f, std::string detail) {
    return FactResult{f, false, std::move(detail)};
}

// One vertex per level sliding with the level until it settles at `i`.
LevelSets sliding_sets(const Diagram& d, std::size_t i) {
    LevelSets sets;
    for (std::size_t n = 1; n <= d.depth(); ++n)
        sets.push_back({std::min(n, i)});
    return sets;
}

// --- designated checks -----------------------------------------------------

FactResult check_unique_search(const CatalogFact& f, const Diagram& d) {
    UniqueSearchResult r =
        unique_ergodicity_search(d, 1, halving_schedule(8), 36);
    if (r.verdict != Verdict::certified)
        return fail(f, "search undetermined: " + r.note);
    ReplayCheck c = replay_unique_certificate(d, r);
    if (!c.valid) return fail(f, "replay rejected: " + c.detail);
    return pass(f, "certified, final gap " + rats(r.final_gap) + " after " +
                       std::to_string(r.final_steps) + " steps, replayed");
}

FactResult check_linear_rows(const CatalogFact& f, const Diagram& d) {
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        const RatMatrix& fm = d.stochastic(n);
        Rat big = frac(long(n), long(n + 1));
        Rat small = frac(1, long(n + 1));
        if (fm(0, 0) != big || fm(0, 1) != small || fm(1, 0) != small ||
            fm(1, 1) != big)
            return fail(f, "row mismatch at level " + std::to_string(n));
    }
    return pass(f, "rows (1-1/(n+1), 1/(n+1)) at every level");
}

FactResult check_gap_closed_form(const CatalogFact& f, const Diagram& d) {
    for (std::size_t m = 0; m <= 10; ++m) {
        Rat gap = row_gap(product_matrix(d, 2, m));
        Rat expect = frac(4, long(m + 2) * long(m + 3));
        if (gap != expect)
            return fail(f, "gap " + rats(gap) + " != " + rats(expect) +
                               " at extension " + std::to_string(m));
    }
    return pass(f, "cumulative gap 4/((m+2)(m+3)) for m <= 10");
}

FactResult check_two_clusters(const CatalogFact& f, const Diagram& d) {
    // base 2: the level-1 transition is flat and collapses every product row
    Polytope p = polytope(d, 2, d.depth() - 2);
    Clustering c = cluster_extremes(p.points, Rat(4));
    if (c.clusters.size() != 2)
        return fail(f, std::to_string(c.clusters.size()) + " clusters");
    if (!c.separated) return fail(f, "clusters not separated");
    return pass(f, "2 separated clusters, inter distance " +
                       rats(c.min_inter));
}

FactResult check_gap_floor(const CatalogFact& f, const Diagram& d) {
    UniqueSearchResult r =
        unique_ergodicity_search(d, 1, halving_schedule(1), 30);
    if (r.verdict != Verdict::undetermined)
        return fail(f, "expected an exhausted budget");
    if (!(r.final_gap > frac(1, 2)))
        return fail(f, "gap fell to " + rats(r.final_gap));
    return pass(f, "gap still " + rats(r.final_gap) + " after 30 steps");
}

FactResult check_two_chains(const CatalogFact& f, const Diagram& d) {
    ChainSearchResult r = chain_partition_search(d, Rat(4), 6);
    if (!r.admissible) return fail(f, "violated: " + r.violated);
    if (r.chains.size() != 2)
        return fail(f, std::to_string(r.chains.size()) + " chains");
    for (const Chain& ch : r.chains) {
        if (!ch.kept) return fail(f, "a chain was dropped");
        if (ch.escape.status != SeqStatus::certified || !ch.escape.convergent)
            return fail(f, "escape not certified: " + ch.escape.note);
    }
    return pass(f, "2 kept chains with certified escape");
}

FactResult check_limit_traces(const CatalogFact& f, const Diagram& d,
                              std::size_t expected) {
    std::size_t level = 5;
    TraceSet ts = trace_from_limit(d, level, d.depth() - level, Rat(4));
    if (ts.traces.size() != expected)
        return fail(f, std::to_string(ts.traces.size()) + " traces");
    for (const auto& trace : ts.traces) {
        TraceCheck tc = verify_trace(d, trace);
        if (tc.residual != 0 || !tc.nonnegative || !tc.normalized)
            return fail(f, "trace residual " + rats(tc.residual));
    }
    return pass(f, std::to_string(expected) +
                       " exactly tail-compatible limit traces");
}

FactResult check_dominant_class(const CatalogFact& f, const Diagram& d) {
    ClassGraph g = class_graph(d.incidence(1));
    DominanceReport rep = distinguished_classes(g);
    if (rep.dominant.size() != 1)
        return fail(f, std::to_string(rep.dominant.size()) +
                           " dominant classes");
    const VertexClass& c = g.classes[rep.dominant[0]];
    if (c.vertices != std::vector<std::size_t>{0})
        return fail(f, "dominant class is not {0}");
    if (!c.exact_radius || *c.exact_radius != 3)
        return fail(f, "radius not certified as 3");
    return pass(f, "one dominant class {0} at certified radius 3");
}

FactResult check_unit_trace(const CatalogFact& f, const Diagram& d) {
    std::vector<StationaryMeasure> ms = stationary_measures(d);
    if (ms.size() != 1)
        return fail(f, std::to_string(ms.size()) + " measures");
    const StationaryMeasure& m = ms[0];
    if (!m.exact || m.radius != Rat(3) || m.residual != 0)
        return fail(f, "eigen data not exact");
    for (const RatVec& level : m.trace)
        if (level != RatVec{Rat(1), Rat(0)})
            return fail(f, "trace leaves (1,0)");
    return pass(f, "unique exact measure with constant trace (1,0)");
}

FactResult check_power_closed_form(const CatalogFact& f, const Diagram& d) {
    Rat ratio = frac(2, 3);
    Rat power = ratio;  // (2/3)^(m+1) at m = 0
    for (std::size_t m = 0; m <= 8; ++m) {
        RatMatrix g = product_matrix(d, 1, m);
        if (g(0, 0) != 1 || g(0, 1) != 0 || g(1, 1) != power ||
            g(1, 0) != Rat(1) - power)
            return fail(f, "power mismatch at m = " + std::to_string(m));
        power *= ratio;
    }
    return pass(f, "products [[1,0],[1-(2/3)^m,(2/3)^m]] for m <= 9");
}

FactResult check_eigen_limit_agreement(const CatalogFact& f, const Diagram& d) {
    CrossCheck c = cross_validate(d, 12);
    if (!c.counts_match || !c.supports_match)
        return fail(f, "routes disagree");
    if (!(c.max_discrepancy < frac(1, 100)))
        return fail(f, "discrepancy " + rats(c.max_discrepancy));
    return pass(f, "eigenvector and limit routes agree, discrepancy " +
                       rats(c.max_discrepancy));
}

FactResult check_binomial_traces(const CatalogFact& f, const Diagram& d) {
    for (const Rat& p : {frac(1, 2), frac(1, 3), frac(2, 5)}) {
        TraceCheck tc = verify_trace(d, pascal_measure(p, d.depth()));
        if (tc.residual != 0 || !tc.nonnegative || !tc.normalized)
            return fail(f, "trace at p = " + rats(p) + " residual " +
                               rats(tc.residual));
    }
    return pass(f, "exact tail-compatible traces at p = 1/2, 1/3, 2/5");
}

FactResult check_binomial_values(const CatalogFact& f, const Diagram& d) {
    RatVec third = pascal_trace(frac(1, 3), 1);
    if (third != RatVec{frac(2, 3), frac(1, 3)})
        return fail(f, "level-1 masses at p = 1/3 are off");
    RatVec half = pascal_trace(frac(1, 2), 3);
    if (half != RatVec{frac(1, 8), frac(3, 8), frac(3, 8), frac(1, 8)})
        return fail(f, "level-3 masses at p = 1/2 are off");
    RatVec sym = pascal_trace(frac(1, 2), d.depth());
    for (std::size_t i = 0; i < sym.size(); ++i)
        if (sym[i] != sym[sym.size() - 1 - i])
            return fail(f, "p = 1/2 masses are not symmetric");
    return pass(f, "spot values and p = 1/2 symmetry hold exactly");
}

FactResult check_no_partition(const CatalogFact& f, const Diagram& d) {
    for (long ratio : {2L, 4L})
        for (std::size_t window = 3; window <= 10; ++window) {
            ChainSearchResult r =
                chain_partition_search(d, Rat(ratio), window);
            if (r.admissible) return fail(f, "a partition was admitted");
            if (r.violated != "retention")
                return fail(f, "violated " + r.violated);
            if (!(r.row_distance_floor >= frac(1, 2)))
                return fail(f, "witness " + rats(r.row_distance_floor));
        }
    return pass(f, "no admissible partition; retention fails with row "
                   "separation >= 1/2 on every window 3..10");
}

FactResult check_extreme_pairs(const CatalogFact& f, const Diagram& d) {
    ExtremeCount c = count_extremes(d);
    if (c.minimal != 2 || c.maximal != 2)
        return fail(f, std::to_string(c.minimal) + " minimal / " +
                           std::to_string(c.maximal) + " maximal");
    return pass(f, "two minimal and two maximal paths at this depth");
}

FactResult check_escape_certified(const CatalogFact& f, const Diagram& d) {
    ExtensionFiniteness r = extension_finiteness(d, sliding_sets(d, 2), 6);
    if (r.verdict != Verdict::certified)
        return fail(f, "escape series not certified: " + r.series.note);
    return pass(f, "escape series certified convergent: " + r.series.term);
}

FactResult check_level_clusters(const CatalogFact& f, const Diagram& d) {
    ChainSearchResult r = chain_partition_search(d, Rat(4), 6);
    if (!r.admissible) return fail(f, "violated: " + r.violated);
    if (r.chains.size() != d.depth())
        return fail(f, std::to_string(r.chains.size()) + " chains");
    for (const Chain& ch : r.chains)
        if (!ch.kept) return fail(f, "a chain was dropped");
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        const auto& blocks = r.level_blocks[n];
        if (blocks.size() != n + 1)
            return fail(f, "level " + std::to_string(n + 1) + " has " +
                               std::to_string(blocks.size()) + " blocks");
        if (blocks.back() != std::vector<std::size_t>{n, n + 1})
            return fail(f, "newest pair not merged at level " +
                               std::to_string(n + 1));
    }
    return pass(f, "every level clusters its rank, newest pair merged, all " +
                       std::to_string(d.depth()) + " chains kept");
}

FactResult check_odometer_subdiagrams(const CatalogFact& f, const Diagram& d) {
    const EntryExpr& a = d.spec()->countable_rule;
    for (std::size_t i : {std::size_t(0), std::size_t(2), std::size_t(5)}) {
        LevelSets sets = sliding_sets(d, i);
        VertexSubdiagram sub = restrict_diagram(d, sets);
        for (std::size_t n = 1; n + 1 <= sub.restricted.depth(); ++n) {
            const IntMatrix& m = sub.restricted.incidence(n);
            if (m.rows() != 1 || m.cols() != 1 || m(0, 0) != a.eval(Int(n)))
                return fail(f, "restriction is not the a_n odometer at i = " +
                                   std::to_string(i));
        }
        SubdiagramErgodicity e =
            subdiagram_unique_ergodicity(d, {sets}, 0, 6);
        if (e.verdict != Verdict::certified)
            return fail(f, "subdiagram not certified at i = " +
                               std::to_string(i));
    }
    return pass(f, "sliding restrictions are a_n odometers, each certified "
                   "uniquely ergodic");
}

FactResult check_bounded_masses(const CatalogFact& f, const Diagram& d) {
    const EntryExpr& a = d.spec()->countable_rule;
    std::vector<RatVec> unit(d.depth(), RatVec{Rat(1)});
    ExtensionMass em =
        extension_mass(d, sliding_sets(d, 1), unit, d.depth());
    Rat expect(1);
    for (std::size_t n = 0; n < em.masses.size(); ++n) {
        if (n >= 1) {
            Int an = a.eval(Int(n));
            Int grown = an + long(n);
            Rat step(grown, an);
            step.canonicalize();
            expect *= step;
        }
        if (em.masses[n] != expect)
            return fail(f, "mass " + rats(em.masses[n]) + " != product " +
                               rats(expect) + " at N = " +
                               std::to_string(n + 1));
        if (n && em.masses[n] < em.masses[n - 1])
            return fail(f, "masses decreased");
    }
    if (!(em.masses.back() < Rat(3)))
        return fail(f, "mass reached " + rats(em.masses.back()));
    if (em.finiteness != Verdict::certified)
        return fail(f, "escape series not certified");
    return pass(f, "masses equal the height-ratio products, ending at " +
                       rats(em.masses.back()) + " < 3");
}

FactResult check_diagonal_floor(const CatalogFact& f, const Diagram& d) {
    const EntryExpr& a = d.spec()->countable_rule;
    const std::pair<std::size_t, std::size_t> spans[] = {
        {1, 3}, {2, 4}, {3, 6}};
    for (auto [n, m] : spans) {
        RatMatrix g = product_matrix(d, n, m);
        Rat bound(1);
        for (std::size_t s = n; s <= n + m; ++s) {
            Int as = a.eval(Int(s));
            Int grown = as + long(s);
            Rat step(as, grown);
            step.canonicalize();
            bound *= step;
        }
        for (std::size_t w = 0; w <= n; ++w)
            if (!(g(w, w) >= bound))
                return fail(f, "entry (" + std::to_string(w) + "," +
                                   std::to_string(w) + ") below " +
                                   rats(bound) + " over levels " +
                                   std::to_string(n) + ".." +
                                   std::to_string(n + m));
    }
    return pass(f, "diagonal product entries stay above the a_s/(a_s+s) "
                   "products");
}

FactResult check_equal_row_sums(const CatalogFact& f, const Diagram& d) {
    ErsReport r = ers_check(d);
    if (!r.equal_row_sums) return fail(f, "row sums vary within a level");
    if (!r.row_sums[0] || *r.row_sums[0] != 6)
        return fail(f, "root column is not 6");
    for (std::size_t n = 1; n < r.row_sums.size(); ++n)
        if (!r.row_sums[n] || *r.row_sums[n] != 2)
            return fail(f, "row sum at level " + std::to_string(n) +
                               " is not the copy count");
    Int period = 6;
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        for (const Int& h : d.heights(n))
            if (h != period)
                return fail(f, "height differs from the stage period at "
                                   "level " + std::to_string(n));
        period *= 2;
    }
    return pass(f, "equal row sums; heights equal the stage periods");
}

FactResult check_scaled_rows(const CatalogFact& f, const Diagram& d) {
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        const IntMatrix& raw = d.incidence(n);
        const RatMatrix& fm = d.stochastic(n);
        for (std::size_t i = 0; i < raw.rows(); ++i)
            for (std::size_t j = 0; j < raw.cols(); ++j) {
                Rat expect(raw(i, j), Int(2));
                expect.canonicalize();
                if (fm(i, j) != expect)
                    return fail(f, "frequency mismatch at level " +
                                       std::to_string(n));
            }
    }
    return pass(f, "transition rows are the occurrence counts over the copy "
                   "count");
}

FactResult check_window_advances(const CatalogFact& f, const Diagram& d) {
    ToeplitzBuild b = build_toeplitz(*d.spec()->seed);
    if (!b.boundaries_advance)
        return fail(f, "hole-free head or tail stalled for two stages");
    return pass(f, "hole-free head and tail grow over every two stages; "
                   "window spans " + std::to_string(b.window.size()) +
                   " positions");
}

FactResult run_check(const CatalogFact& f, const Diagram& d) {
    if (f.check == "unique-contraction-search") return check_unique_search(f, d);
    if (f.check == "linear-diagonal-rows") return check_linear_rows(f, d);
    if (f.check == "cumulative-gap-closed-form") return check_gap_closed_form(f, d);
    if (f.check == "two-separated-clusters") return check_two_clusters(f, d);
    if (f.check == "positive-gap-floor") return check_gap_floor(f, d);
    if (f.check == "two-admissible-chains") return check_two_chains(f, d);
    if (f.check == "two-limit-traces") return check_limit_traces(f, d, 2);
    if (f.check == "dominant-odometer-class") return check_dominant_class(f, d);
    if (f.check == "constant-unit-trace") return check_unit_trace(f, d);
    if (f.check == "transition-power-closed-form")
        return check_power_closed_form(f, d);
    if (f.check == "eigen-limit-agreement")
        return check_eigen_limit_agreement(f, d);
    if (f.check == "binomial-traces-exact") return check_binomial_traces(f, d);
    if (f.check == "binomial-spot-values") return check_binomial_values(f, d);
    if (f.check == "no-admissible-partition") return check_no_partition(f, d);
    if (f.check == "extreme-path-pairs") return check_extreme_pairs(f, d);
    if (f.check == "certified-escape-series")
        return check_escape_certified(f, d);
    if (f.check == "level-clusters-track-rank")
        return check_level_clusters(f, d);
    if (f.check == "odometer-subdiagrams")
        return check_odometer_subdiagrams(f, d);
    if (f.check == "product-bounded-masses") return check_bounded_masses(f, d);
    if (f.check == "diagonal-transition-floor")
        return check_diagonal_floor(f, d);
    if (f.check == "equal-row-sums") return check_equal_row_sums(f, d);
    if (f.check == "scaled-frequency-rows") return check_scaled_rows(f, d);
    if (f.check == "window-advances") return check_window_advances(f, d);
    throw Error(ErrorKind::range, "no routine implements check '" + f.check +
                                      "'");
}

std::vector<std::vector<EntryExpr>> symmetric_rules(const std::string& diag) {
    EntryExpr dd = EntryExpr::parse(diag);
    EntryExpr one = EntryExpr::constant(1);
    return {{dd, one}, {one, dd}};
}

// 0 _ 1 seed; stage s doubles and fills the first hole with 1 when s is odd,
// the last hole with 0 when s is even.
ToeplitzSeed alternating_toeplitz_seed(std::size_t stages) {
    ToeplitzSeed seed;
    seed.alphabet = {"0", "1"};
    seed.block = {0, -1, 1};
    seed.copy_rule = EntryExpr::parse("2");
    seed.has_copy_rule = true;
    std::vector<int> blk = seed.block;
    for (std::size_t s = 1; s <= stages; ++s) {
        std::vector<int> next;
        next.insert(next.end(), blk.begin(), blk.end());
        next.insert(next.end(), blk.begin(), blk.end());
        std::vector<std::size_t> holes;
        for (std::size_t i = 0; i < next.size(); ++i)
            if (next[i] < 0) holes.push_back(i);
        std::size_t pos = (s % 2 == 1) ? holes.front() : holes.back();
        int sym = (s % 2 == 1) ? 1 : 0;
        next[pos] = sym;
        seed.fills.push_back({{pos, sym}});
        blk = std::move(next);
    }
    return seed;
}

}  // namespace

CatalogEntry example_b1() {
    CatalogEntry e;
    e.name = "b1";
    e.summary = "two symmetric vertices, linear diagonal growth, uniquely "
                "ergodic";
    e.depth = 40;
    e.spec.generator = Generator::entries;
    e.spec.depth = e.depth;
    e.spec.entry_rules = symmetric_rules("n");
    e.facts = {
        {"unique-contraction-search",
         "the cumulative contraction search certifies a unique measure"},
        {"linear-diagonal-rows",
         "transition rows are (1-1/(n+1), 1/(n+1)) at every level"},
        {"cumulative-gap-closed-form",
         "the contraction gap from base 2 is exactly 4/((m+2)(m+3))"},
    };
    return e;
}

CatalogEntry example_b2() {
    CatalogEntry e;
    e.name = "b2";
    e.summary = "two symmetric vertices, quadratic diagonal growth, exactly "
                "two measures";
    e.depth = 40;
    e.spec.generator = Generator::entries;
    e.spec.depth = e.depth;
    e.spec.entry_rules = symmetric_rules("n^2");
    e.facts = {
        {"two-separated-clusters",
         "the deep product rows split into two separated clusters"},
        {"positive-gap-floor",
         "the contraction gap stays above 1/2, so no single measure"},
        {"two-admissible-chains",
         "the chain search keeps two chains with certified escape"},
        {"two-limit-traces",
         "the limit rows yield two exactly tail-compatible traces"},
    };
    return e;
}

CatalogEntry stationary_3odometer() {
    CatalogEntry e;
    e.name = "odometer3";
    e.summary = "repeated [[3,0],[1,2]] with root edges (3,3); the measure "
                "lives on the embedded 3-adic odometer";
    e.depth = 24;
    e.spec.generator = Generator::stationary;
    e.spec.depth = e.depth;
    e.spec.matrix = IntMatrix::from_rows({{3, 0}, {1, 2}});
    e.spec.root_edges = IntVec{3, 3};
    e.facts = {
        {"dominant-odometer-class",
         "one dominant class {0} at certified spectral radius 3"},
        {"constant-unit-trace",
         "the unique stationary measure has trace (1,0) at every level"},
        {"transition-power-closed-form",
         "transition products are [[1,0],[1-(2/3)^m,(2/3)^m]]"},
        {"eigen-limit-agreement",
         "the eigenvector and limit-of-products routes agree"},
    };
    return e;
}

CatalogEntry pascal_entry() {
    CatalogEntry e;
    e.name = "pascal";
    e.summary = "triangular array with unit bidiagonal incidence; binomial "
                "measures";
    e.depth = 24;
    e.spec.generator = Generator::pascal;
    e.spec.depth = e.depth;
    e.facts = {
        {"binomial-traces-exact",
         "binomial traces at p = 1/2, 1/3, 2/5 are exactly tail-compatible"},
        {"binomial-spot-values",
         "level masses match the closed form, symmetric at p = 1/2"},
        {"no-admissible-partition",
         "no chain partition is admissible; rows separate by at least 1/2"},
        {"extreme-path-pairs",
         "two minimal and two maximal paths at the materialized depth"},
    };
    return e;
}

RatVec pascal_trace(const Rat& p, std::size_t n) {
    if (!(p > 0) || !(p < 1))
        throw Error(ErrorKind::range,
                    "binomial parameter must satisfy 0 < p < 1");
    Rat q = Rat(1) - p;
    RatVec out(n + 1);
    // C(n,i) p^i q^(n-i), built by the ratio between consecutive masses
    Rat mass(1);
    for (std::size_t k = 0; k < n; ++k) mass *= q;
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = mass;
        if (i < n) {
            mass *= frac(long(n - i), long(i + 1)) * p;
            mass /= q;
        }
    }
    return out;
}

std::vector<RatVec> pascal_measure(const Rat& p, std::size_t depth) {
    std::vector<RatVec> trace;
    for (std::size_t n = 1; n <= depth; ++n) trace.push_back(pascal_trace(p, n));
    return trace;
}

CatalogEntry countable_example(const EntryExpr& a_rule, std::size_t depth) {
    if (!a_rule.polynomial())
        throw Error(ErrorKind::refused,
                    "rule '" + a_rule.str() +
                        "' admits no closed-form escape certificate "
                        "(non-polynomial)");
    PolyRatio escape{Poly::var(), a_rule.to_poly() + Poly::var()};
    SeriesCertificate cert = classify_series(escape);
    if (cert.cls != SeriesClass::convergent)
        throw Error(ErrorKind::refused,
                    "escape series sum of " + escape.str() +
                        " is divergent (degree gap " +
                        std::to_string(cert.den_degree - cert.num_degree) +
                        " <= 1), so the family keeps no summable chains");
    CatalogEntry e;
    e.name = "countable";
    e.summary = "one new vertex per level with diagonal rule a_n = " +
                a_rule.str() + "; countably many measures";
    e.depth = depth;
    e.spec.generator = Generator::countable;
    e.spec.depth = depth;
    e.spec.countable_rule = a_rule;
    e.facts = {
        {"certified-escape-series",
         "the sliding-vertex escape series is certified convergent"},
        {"level-clusters-track-rank",
         "level n clusters into n blocks with the newest pair merged, and "
         "every chain is kept"},
        {"odometer-subdiagrams",
         "each sliding restriction is the a_n odometer, certified uniquely "
         "ergodic"},
        {"product-bounded-masses",
         "extension masses equal the height-ratio products and stay below 3"},
        {"diagonal-transition-floor",
         "diagonal product entries stay above the a_s/(a_s+s) products"},
    };
    return e;
}

CatalogEntry ers_toeplitz(const ToeplitzSeed& seed, std::size_t depth) {
    build_toeplitz(seed);  // rejects inconsistent seeds with its diagnostic
    CatalogEntry e;
    e.name = "toeplitz";
    e.summary = "diagram read off a Toeplitz block seed; equal row sums";
    e.depth = depth;
    e.spec.generator = Generator::ers_toeplitz;
    e.spec.depth = depth;
    e.spec.seed = std::make_shared<ToeplitzSeed>(seed);
    e.facts = {
        {"equal-row-sums",
         "every level has one row sum and heights equal the stage periods"},
        {"scaled-frequency-rows",
         "transition rows are the occurrence counts over the copy count"},
        {"window-advances",
         "the hole-free head and tail grow over every two stages"},
    };
    return e;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        v.push_back(example_b1());
        v.push_back(example_b2());
        v.push_back(stationary_3odometer());
        v.push_back(pascal_entry());
        v.push_back(countable_example(EntryExpr::parse("n^3+2")));
        v.push_back(ers_toeplitz(alternating_toeplitz_seed(7), 6));
        return v;
    }();
    return entries;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const CatalogEntry& e : catalog()) names.push_back(e.name);
    return names;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const CatalogEntry& e : catalog())
        if (e.name == name) return e;
    throw Error(ErrorKind::range, "no catalog entry named '" + name + "'");
}

std::vector<FactResult> verify_entry(const CatalogEntry& entry) {
    Diagram d = materialize(entry.spec);
    std::vector<FactResult> out;
    for (const CatalogFact& f : entry.facts) out.push_back(run_check(f, d));
    return out;
}

}  // namespace bratteli
