#include "bratteli/ergodicity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bratteli/error.hpp"

namespace bratteli {

const char* verdict_name(Verdict v) {
    return v == Verdict::certified ? "certified" : "undetermined";
}

const char* cond_status_name(CondStatus s) {
    switch (s) {
        case CondStatus::exact: return "exact";
        case CondStatus::evidence: return "evidence";
        case CondStatus::vacuous: return "vacuous";
        case CondStatus::failed: return "failed";
    }
    return "unknown";
}

std::vector<Rat> halving_schedule(std::size_t count) {
    std::vector<Rat> s;
    Rat eps(1);
    for (std::size_t k = 0; k < count; ++k) {
        eps /= 2;
        s.push_back(eps);
    }
    return s;
}

namespace {

Int max_int(const Int& a, const Int& b) { return a < b ? b : a; }

Int level_int(std::size_t n) { return Int(static_cast<unsigned long>(n)); }

bool decay_pass(const DecayAssessment& a) {
    return a.status == SeqStatus::exact_zero || a.status == SeqStatus::evidence;
}

bool series_pass(const SeriesAssessment& a) {
    return a.status == SeqStatus::exact_zero ||
           (a.status == SeqStatus::certified && a.convergent) ||
           (a.status == SeqStatus::evidence && a.convergent);
}

std::vector<std::size_t> term_levels(std::size_t depth) {
    std::vector<std::size_t> levels(depth - 1);
    std::iota(levels.begin(), levels.end(), 1);
    return levels;
}

// Sorted, pairwise disjoint, nonempty blocks fitting every level's width.
std::vector<std::vector<std::size_t>> checked_blocks(
    const Diagram& d, const std::vector<std::vector<std::size_t>>& raw) {
    if (raw.empty())
        throw Error(ErrorKind::invalid_spec, "partition needs at least one block");
    std::vector<std::vector<std::size_t>> blocks = raw;
    std::set<std::size_t> seen;
    std::size_t mx = 0;
    for (auto& b : blocks) {
        if (b.empty())
            throw Error(ErrorKind::invalid_spec, "partition block is empty");
        std::sort(b.begin(), b.end());
        for (std::size_t v : b) {
            if (!seen.insert(v).second)
                throw Error(ErrorKind::invalid_spec,
                            "partition blocks overlap at vertex " +
                                std::to_string(v));
            mx = std::max(mx, v);
        }
    }
    for (std::size_t n = 1; n <= d.depth(); ++n)
        if (mx >= d.num_vertices(n))
            throw Error(ErrorKind::invalid_spec,
                        "partition exceeds the width of level " +
                            std::to_string(n));
    return blocks;
}

std::vector<std::size_t> remainder_at(
    std::size_t width, const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<char> covered(width, 0);
    for (const auto& b : blocks)
        for (std::size_t v : b) covered[v] = 1;
    std::vector<std::size_t> rem;
    for (std::size_t v = 0; v < width; ++v)
        if (!covered[v]) rem.push_back(v);
    return rem;
}

Rat block_row_mass(const RatMatrix& f, std::size_t v,
                   const std::vector<std::size_t>& cols) {
    Rat mass(0);
    for (std::size_t w : cols) mass += f(v, w);
    return mass;
}

// Sorted, nonempty per-level sets within each level's width, pairwise
// disjoint across blocks at every level.
void check_level_sets(const Diagram& d, std::vector<LevelSets>& blocks) {
    std::size_t depth = d.depth();
    if (blocks.empty())
        throw Error(ErrorKind::invalid_spec,
                    "partition needs at least one block");
    for (auto& sets : blocks) {
        if (sets.size() != depth)
            throw Error(ErrorKind::invalid_spec,
                        "block needs one vertex set per level");
        for (std::size_t l = 1; l <= depth; ++l) {
            auto& s = sets[l - 1];
            if (s.empty())
                throw Error(ErrorKind::invalid_spec,
                            "empty block set at level " + std::to_string(l));
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw Error(ErrorKind::invalid_spec,
                            "repeated vertex in a block at level " +
                                std::to_string(l));
            if (s.back() >= d.num_vertices(l))
                throw Error(ErrorKind::invalid_spec,
                            "block exceeds the width of level " +
                                std::to_string(l));
        }
    }
    for (std::size_t l = 1; l <= depth; ++l) {
        std::set<std::size_t> seen;
        for (const auto& sets : blocks)
            for (std::size_t v : sets[l - 1])
                if (!seen.insert(v).second)
                    throw Error(ErrorKind::invalid_spec,
                                "blocks overlap at level " + std::to_string(l));
    }
}

}  // namespace

// Worst mass escaping the sets along one level step, per level 1..depth-1.
std::vector<Rat> escape_terms_of(const Diagram& d, const LevelSets& sets) {
    std::vector<Rat> terms;
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        const RatMatrix& f = d.stochastic(n);
        Rat worst(0);
        for (std::size_t v : sets[n]) {
            Rat esc = Rat(1) - block_row_mass(f, v, sets[n - 1]);
            if (worst < esc) worst = esc;
        }
        terms.push_back(worst);
    }
    return terms;
}

// Closed-form worst escape mass along per-level sets that settle into a
// recognizable pattern: an eventually constant set, or the growing-rank
// generator's merged top pair {l-1, l} sliding with the level.
std::optional<SymbolicTerm> escape_symbolic(const Diagram& d,
                                            const LevelSets& sets) {
    std::size_t depth = sets.size();
    Int last_term = level_int(depth - 1);

    std::size_t stable = depth;
    while (stable > 1 && sets[stable - 2] == sets.back()) --stable;
    if (auto h = symbolic_block_deficiency(d, sets.back())) {
        Int from = max_int(h->valid_from, level_int(stable));
        if (from <= last_term) return SymbolicTerm{h->ratio, from};
    }

    const DiagramSpec* sp = d.spec();
    if (sp && sp->generator == Generator::countable &&
        sp->countable_rule.polynomial()) {
        std::size_t pair_from = depth + 1;
        for (std::size_t l = depth; l >= 1; --l) {
            if (sets[l - 1] == std::vector<std::size_t>{l - 1, l})
                pair_from = l;
            else
                break;
        }
        if (level_int(pair_from) <= last_term) {
            Poly a = sp->countable_rule.to_poly();
            Poly den = a + Poly::var();
            Poly num = Poly::var() - Poly::constant(1);
            Int from = max_int(level_int(pair_from), Int(1));
            from = max_int(from, den.positivity_bound());
            return SymbolicTerm{PolyRatio{num, den}, from};
        }
    }
    return std::nullopt;
}

namespace {

// Closed-form minimum in-block entry for per-level sets with a constant tail.
std::optional<SymbolicTerm> in_block_min_symbolic(const Diagram& d,
                                                  const LevelSets& sets) {
    std::size_t depth = sets.size();
    Int last_term = level_int(depth - 1);
    std::size_t stable = depth;
    while (stable > 1 && sets[stable - 2] == sets.back()) --stable;
    if (auto h = symbolic_block_min_entry(d, sets.back())) {
        Int from = max_int(h->valid_from, level_int(stable));
        if (from <= last_term) return SymbolicTerm{h->ratio, from};
    }
    return std::nullopt;
}

// Exact determinant of a small rational matrix (Gaussian elimination).
Rat rat_det(std::vector<RatVec> m) {
    std::size_t n = m.size();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat factor = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= factor * m[c][j];
        }
    }
    return det;
}

Int factorial(std::size_t n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

Rat vec_dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Squared l-volume of the simplex spanned by `apex` and the l `points`,
// via the Gram determinant of the difference vectors over (l!)^2.
Rat squared_volume(const std::vector<RatVec>& points, const RatVec& apex) {
    std::size_t l = points.size();
    std::vector<RatVec> diff;
    for (const RatVec& p : points) {
        RatVec u(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) u[i] = p[i] - apex[i];
        diff.push_back(std::move(u));
    }
    std::vector<RatVec> gram(l, RatVec(l));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j)
            gram[i][j] = gram[j][i] = vec_dot(diff[i], diff[j]);
    Rat det = rat_det(std::move(gram));
    Int f = factorial(l);
    Int f2 = f * f;
    Rat scale(Int(1), f2);
    scale.canonicalize();
    return det * scale;
}

}  // namespace

UniqueSearchResult unique_ergodicity_search(const Diagram& d, std::size_t base,
                                            std::vector<Rat> schedule,
                                            std::size_t max_steps) {
    if (d.depth() < 2)
        throw Error(ErrorKind::range, "contraction search needs depth >= 2");
    if (base < 1 || base > d.depth() - 1)
        throw Error(ErrorKind::range, "base level out of range");
    if (schedule.empty())
        throw Error(ErrorKind::invalid_spec, "tolerance schedule is empty");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0))
            throw Error(ErrorKind::invalid_spec, "tolerances must be positive");
        if (k > 0 && !(schedule[k] < schedule[k - 1]))
            throw Error(ErrorKind::invalid_spec,
                        "tolerances must be strictly decreasing");
    }
    if (max_steps < 1)
        throw Error(ErrorKind::range, "step budget must be at least 1");

    UniqueSearchResult r;
    r.schedule = std::move(schedule);
    r.max_steps = max_steps;

    // A one-step transition with exactly equal rows maps everything above it
    // to a single point; the search gains nothing before such levels.
    std::size_t b = base;
    while (b < d.depth() - 1 && row_gap(d.stochastic(b)) == 0) {
        r.collapsed.push_back(b);
        ++b;
    }
    r.base = b;

    RatMatrix p = d.stochastic(b);
    Rat gap = row_gap(p);
    std::size_t m = 0;
    std::size_t k = 0;
    std::string stop;
    for (;;) {
        while (k < r.schedule.size() && gap <= r.schedule[k]) {
            r.steps.push_back({m, gap});
            ++k;
        }
        if (k == r.schedule.size()) break;
        if (m >= r.max_steps) {
            stop = "step budget exhausted";
            break;
        }
        if (b + m + 1 > d.depth() - 1) {
            stop = "no transition levels left";
            break;
        }
        ++m;
        Rat prev = gap;
        p = d.stochastic(b + m).mul(p);
        gap = row_gap(p);
        if (gap > prev)
            throw Error(ErrorKind::numeric,
                        "internal: contraction gap increased along a product");
    }
    r.final_gap = gap;
    r.final_steps = m;
    r.verdict =
        k == r.schedule.size() ? Verdict::certified : Verdict::undetermined;
    r.telescope_levels.push_back(0);
    r.telescope_levels.push_back(b);
    for (const ContractionStep& s : r.steps) {
        std::size_t level = b + s.steps + 1;
        if (r.telescope_levels.back() != level)
            r.telescope_levels.push_back(level);
    }
    r.note = r.verdict == Verdict::certified
                 ? "schedule consumed after " + std::to_string(m) + " steps"
                 : stop + " with " + std::to_string(r.schedule.size() - k) +
                       " tolerances unmet";
    return r;
}

ReplayCheck replay_unique_certificate(const Diagram& d,
                                      const UniqueSearchResult& r) {
    ReplayCheck c;
    c.valid = false;
    if (r.steps.size() > r.schedule.size()) {
        c.detail = "more steps than tolerances";
        return c;
    }
    if (r.verdict == Verdict::certified &&
        r.steps.size() != r.schedule.size()) {
        c.detail = "certified result does not cover the schedule";
        return c;
    }
    for (std::size_t i = 0; i < r.collapsed.size(); ++i) {
        std::size_t level = r.collapsed[i];
        if (i + 1 < r.collapsed.size() && r.collapsed[i + 1] != level + 1) {
            c.detail = "collapsed levels not consecutive";
            return c;
        }
        if (row_gap(d.stochastic(level)) != 0) {
            c.detail = "collapsed level " + std::to_string(level) +
                       " has a nonzero gap";
            return c;
        }
    }
    if (!r.collapsed.empty() && r.collapsed.back() + 1 != r.base) {
        c.detail = "collapsed levels do not end at the base";
        return c;
    }
    std::vector<std::size_t> expect{0, r.base};
    for (const ContractionStep& s : r.steps) {
        std::size_t level = r.base + s.steps + 1;
        if (expect.back() != level) expect.push_back(level);
    }
    if (expect != r.telescope_levels) {
        c.detail = "telescope levels do not match the recorded steps";
        return c;
    }

    Diagram t = telescope(d, r.telescope_levels);
    std::vector<Rat> gap_at;  // index j-1: gap of the cumulative product C_j
    RatMatrix prod;
    for (std::size_t j = 1; j + 1 <= t.depth(); ++j) {
        prod = j == 1 ? t.stochastic(1) : t.stochastic(j).mul(prod);
        gap_at.push_back(row_gap(prod));
    }

    Rat prev;
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
        std::size_t level = r.base + r.steps[k].steps + 1;
        std::size_t j =
            std::find(r.telescope_levels.begin(), r.telescope_levels.end(),
                      level) -
            r.telescope_levels.begin();
        const Rat& gap = gap_at[j - 2];
        c.bounds.push_back(gap);
        if (gap != r.steps[k].bound) {
            c.detail = "recomputed bound differs at step " + std::to_string(k);
            return c;
        }
        if (!(gap <= r.schedule[k])) {
            c.detail = "tolerance " + std::to_string(k) + " not met";
            return c;
        }
        if (k > 0 && gap > prev) {
            c.detail = "bounds are not monotone";
            return c;
        }
        prev = gap;
    }
    c.valid = true;
    c.detail = "replayed " + std::to_string(c.bounds.size()) +
               " bounds exactly through " +
               std::to_string(r.telescope_levels.size()) + " telescoped levels";
    return c;
}

DivergenceReport min_entry_divergence(const Diagram& d, std::size_t window) {
    if (d.depth() < 2)
        throw Error(ErrorKind::range, "divergence test needs depth >= 2");
    if (window < 1 || window > d.depth() - 1)
        throw Error(ErrorKind::range, "window must be in 1..depth-1");

    DivergenceReport rep;
    rep.floor = 0;
    std::vector<std::size_t> levels = term_levels(d.depth());
    for (std::size_t n : levels) {
        const RatMatrix& f = d.stochastic(n);
        Rat mn = f(0, 0);
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j)
                if (f(i, j) < mn) mn = f(i, j);
        rep.terms.push_back(mn);
    }

    if (auto floor = stationary_entry_floor(d)) {
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (levels[i] >= 2 && rep.terms[i] < *floor)
                throw Error(ErrorKind::numeric,
                            "internal: stationary entry floor violated");
        rep.method = "constant-floor";
        rep.verdict = Verdict::certified;
        rep.floor = *floor;
        rep.series.status = SeqStatus::certified;
        rep.series.convergent = false;
        for (const Rat& t : rep.terms) rep.series.partial_sum += t;
        rep.series.last = rep.terms.back();
        rep.series.note = "terms bounded below by a positive constant";
        rep.note = "strictly positive repeated incidence: every entry is at "
                   "least 1/R^2 from level 2 on";
        return rep;
    }
    if (auto sym = symbolic_min_entry(d)) {
        rep.method = "closed-form";
        rep.series = assess_series(levels, rep.terms, window, sym);
        if (rep.series.status == SeqStatus::failed) {
            rep.verdict = Verdict::undetermined;
            rep.note = "closed form disagreed with the computed entries";
        } else if (rep.series.convergent) {
            rep.verdict = Verdict::undetermined;
            rep.note = "minimum-entry series converges exactly; this test "
                       "cannot certify";
        } else {
            rep.verdict = Verdict::certified;
            rep.note = "minimum-entry series diverges by exact degree "
                       "comparison";
        }
        return rep;
    }
    rep.method = "window";
    rep.series = assess_series(levels, rep.terms, window, std::nullopt);
    rep.verdict = Verdict::undetermined;
    if (rep.series.status == SeqStatus::exact_zero)
        rep.note = "a zero entry at every level; the series is exactly zero";
    else if (rep.series.status == SeqStatus::evidence)
        rep.note = "trailing window decays geometrically; the series is "
                   "likely finite";
    else
        rep.note = "no certificate applies; partial sums reported";
    return rep;
}

PartitionReport check_partition_criteria(const Diagram& d,
                                         const PartitionCriteria& opt) {
    if (d.depth() < 2)
        throw Error(ErrorKind::range, "partition check needs depth >= 2");
    if (opt.window < 1)
        throw Error(ErrorKind::range, "window must be at least 1");
    if (!(opt.c > 0) || !(opt.c < 1))
        throw Error(ErrorKind::invalid_spec, "mass margin must lie in (0,1)");
    if (!(opt.c1 > 0) || !(opt.c1 <= 1))
        throw Error(ErrorKind::invalid_spec,
                    "regularity margin must lie in (0,1]");
    std::vector<std::vector<std::size_t>> blocks = checked_blocks(d, opt.blocks);
    std::size_t depth = d.depth();
    std::size_t l = blocks.size();
    std::vector<std::size_t> levels = term_levels(depth);

    PartitionReport rep;
    rep.block_count = l;
    rep.shape.status = CondStatus::exact;
    rep.shape.note = std::to_string(l) +
                     " disjoint nonempty blocks of constant membership";

    for (const auto& b : blocks) {
        std::vector<Rat> terms;
        for (std::size_t n : levels) {
            const RatMatrix& f = d.stochastic(n);
            Rat worst(0);
            bool first = true;
            for (std::size_t v : b) {
                Rat in = block_row_mass(f, v, b);
                if (first || in < worst) {
                    worst = in;
                    first = false;
                }
            }
            terms.push_back(Rat(1) - worst);
        }
        rep.escape.push_back(
            assess_series(levels, terms, opt.window, symbolic_block_deficiency(d, b)));
        rep.escape_terms.push_back(std::move(terms));

        std::vector<Rat> spread;
        for (std::size_t n : levels) {
            const RatMatrix& f = d.stochastic(n);
            std::vector<RatVec> rows;
            for (std::size_t v : b) rows.push_back(f.row(v));
            spread.push_back(diameter_dstar(rows));
        }
        rep.contraction.push_back(assess_decay(spread, opt.window));
        rep.contraction_seq.push_back(std::move(spread));
    }

    // Remainder-apex simplex volumes against the block centroids, per level.
    {
        std::vector<Rat> vols;
        RatMatrix y;  // rows of G_(n-1,1), built incrementally
        for (std::size_t n = 2; n <= depth; ++n) {
            y = n == 2 ? d.stochastic(1) : d.stochastic(n - 1).mul(y);
            std::vector<std::size_t> rem = remainder_at(d.num_vertices(n), blocks);
            if (rem.empty()) continue;
            std::vector<RatVec> centroids;
            for (const auto& b : blocks) {
                RatVec c(y.cols(), Rat(0));
                for (std::size_t w : b) {
                    RatVec row = y.row(w);
                    for (std::size_t i = 0; i < c.size(); ++i) c[i] += row[i];
                }
                Rat inv(Int(1), level_int(b.size()));
                inv.canonicalize();
                for (Rat& x : c) x *= inv;
                centroids.push_back(std::move(c));
            }
            Rat worst(0);
            for (std::size_t w : rem) {
                Rat v2 = squared_volume(centroids, y.row(w));
                if (v2 < 0)
                    throw Error(ErrorKind::numeric,
                                "internal: negative squared volume");
                if (worst < v2) worst = v2;
            }
            vols.push_back(worst);
        }
        rep.volumes.sequence = vols;
        if (vols.empty()) {
            rep.volumes.status = CondStatus::vacuous;
            rep.volumes.note = "no remainder vertices at any level";
        } else {
            DecayAssessment a = assess_decay(vols, opt.window);
            rep.volumes.status = a.status == SeqStatus::exact_zero
                                     ? CondStatus::exact
                                 : a.status == SeqStatus::evidence
                                     ? CondStatus::evidence
                                     : CondStatus::failed;
            rep.volumes.note = "largest squared simplex volume per level: " +
                               a.note;
        }
    }

    // Remainder rows must not load any single block beyond 1-c.
    {
        Rat cap = Rat(1) - opt.c;
        bool any = false;
        std::vector<Rat> seq;
        for (std::size_t n : levels) {
            const RatMatrix& f = d.stochastic(n);
            std::vector<std::size_t> rem =
                remainder_at(d.num_vertices(n + 1), blocks);
            Rat worst(0);
            for (std::size_t v : rem) {
                any = true;
                for (const auto& b : blocks) {
                    Rat mass = block_row_mass(f, v, b);
                    if (worst < mass) worst = mass;
                }
            }
            seq.push_back(worst);
        }
        rep.balance.sequence = seq;
        if (!any) {
            rep.balance.status = CondStatus::vacuous;
            rep.balance.note = "no remainder rows at any level";
        } else {
            std::size_t lo = seq.size() > opt.window ? seq.size() - opt.window : 0;
            bool ok = true;
            for (std::size_t i = lo; i < seq.size(); ++i)
                if (!(seq[i] <= cap)) ok = false;
            rep.balance.status = ok ? CondStatus::exact : CondStatus::failed;
            rep.balance.note = ok ? "remainder-to-block mass within 1-c on the "
                                    "trailing window"
                                  : "a remainder row exceeds 1-c on the "
                                    "trailing window";
        }
    }

    // Escape masses of each block must be level-regular: min >= c1 * max.
    {
        std::vector<Rat> seq;
        for (std::size_t n : levels) {
            const RatMatrix& f = d.stochastic(n);
            Rat level_worst(1);
            for (const auto& b : blocks) {
                Rat mn(0), mx(0);
                bool first = true;
                for (std::size_t v : b) {
                    Rat esc = Rat(1) - block_row_mass(f, v, b);
                    if (first) {
                        mn = mx = esc;
                        first = false;
                    } else {
                        if (esc < mn) mn = esc;
                        if (mx < esc) mx = esc;
                    }
                }
                Rat ratio = mx == 0 ? Rat(1) : mn / mx;
                if (ratio < level_worst) level_worst = ratio;
            }
            seq.push_back(level_worst);
        }
        rep.regularity.sequence = seq;
        std::size_t lo = seq.size() > opt.window ? seq.size() - opt.window : 0;
        bool ok = true;
        for (std::size_t i = lo; i < seq.size(); ++i)
            if (!(seq[i] >= opt.c1)) ok = false;
        rep.regularity.status = ok ? CondStatus::exact : CondStatus::failed;
        rep.regularity.note =
            ok ? "every block's escape masses stay within the c1 ratio"
               : "a block's escape masses fall outside the c1 ratio";
    }

    bool ok = rep.shape.status == CondStatus::exact;
    for (const auto& a : rep.escape) ok = ok && series_pass(a);
    for (const auto& a : rep.contraction) ok = ok && decay_pass(a);
    ok = ok && rep.volumes.status != CondStatus::failed;
    ok = ok && rep.balance.status != CondStatus::failed;
    ok = ok && rep.regularity.status == CondStatus::exact;
    rep.established = ok;
    return rep;
}

LevelSets constant_level_sets(const Diagram& d,
                              std::vector<std::size_t> block) {
    std::sort(block.begin(), block.end());
    return LevelSets(d.depth(), std::move(block));
}

SubdiagramErgodicity subdiagram_unique_ergodicity(
    const Diagram& d, const std::vector<LevelSets>& blocks, std::size_t j,
    std::size_t window) {
    if (d.depth() < 2)
        throw Error(ErrorKind::range, "need depth >= 2");
    if (window < 1)
        throw Error(ErrorKind::range, "window must be at least 1");
    if (j >= blocks.size())
        throw Error(ErrorKind::range, "block index out of range");
    std::vector<LevelSets> bs = blocks;
    check_level_sets(d, bs);

    SubdiagramErgodicity rep;
    rep.floor = 0;
    std::size_t depth = d.depth();
    std::vector<std::size_t> levels = term_levels(depth);

    // Prerequisites for the measure-extension argument: every block keeps a
    // constant number of vertices, and the mass escaping each block along one
    // level step is summable.
    rep.prerequisites = true;
    for (const LevelSets& sets : bs) {
        for (const auto& s : sets)
            if (s.size() != sets.front().size()) rep.prerequisites = false;
        std::vector<Rat> esc = escape_terms_of(d, sets);
        SeriesAssessment a =
            assess_series(levels, esc, window, escape_symbolic(d, sets));
        if (!series_pass(a)) rep.prerequisites = false;
    }

    const LevelSets& sets = bs[j];
    rep.singleton = true;
    for (const auto& s : sets)
        if (s.size() != 1) rep.singleton = false;

    for (std::size_t n : levels) {
        const RatMatrix& f = d.stochastic(n);
        Rat mn;
        bool first = true;
        for (std::size_t v : sets[n])
            for (std::size_t w : sets[n - 1]) {
                if (first || f(v, w) < mn) {
                    mn = f(v, w);
                    first = false;
                }
            }
        rep.terms.push_back(mn);
    }

    bool divergent = false;
    if (auto floor = stationary_entry_floor(d)) {
        rep.floor = *floor;
        rep.series.status = SeqStatus::certified;
        rep.series.convergent = false;
        for (const Rat& t : rep.terms) rep.series.partial_sum += t;
        rep.series.last = rep.terms.back();
        rep.series.note = "terms bounded below by a positive constant";
        divergent = true;
    } else {
        rep.series = assess_series(levels, rep.terms, window,
                                   in_block_min_symbolic(d, sets));
        divergent =
            rep.series.status == SeqStatus::certified && !rep.series.convergent;
    }

    // Exact spreads of the in-block transition products, column by column,
    // next to the certified contraction curve spread_1 * prod(1 - 2 m_s).
    {
        const RatMatrix& f1 = d.stochastic(1);
        RatMatrix g(sets[1].size(), sets[0].size());
        for (std::size_t a = 0; a < g.rows(); ++a)
            for (std::size_t b = 0; b < g.cols(); ++b)
                g(a, b) = f1(sets[1][a], sets[0][b]);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            std::size_t n = levels[i];
            if (i > 0) {
                const RatMatrix& fn = d.stochastic(n);
                RatMatrix step(sets[n].size(), sets[n - 1].size());
                for (std::size_t a = 0; a < step.rows(); ++a)
                    for (std::size_t b = 0; b < step.cols(); ++b)
                        step(a, b) = fn(sets[n][a], sets[n - 1][b]);
                g = step.mul(g);
            }
            Rat spread(0);
            for (std::size_t w = 0; w < g.cols(); ++w) {
                Rat mn = g(0, w), mx = g(0, w);
                for (std::size_t v = 1; v < g.rows(); ++v) {
                    if (g(v, w) < mn) mn = g(v, w);
                    if (mx < g(v, w)) mx = g(v, w);
                }
                Rat s = mx - mn;
                if (spread < s) spread = s;
            }
            rep.block_spread.push_back(spread);
            if (i == 0) {
                rep.spread_bound.push_back(spread);
            } else {
                Rat factor = Rat(1) - Rat(2) * rep.terms[i];
                if (factor < 0) factor = 0;
                rep.spread_bound.push_back(rep.spread_bound.back() * factor);
            }
        }
    }

    if (rep.singleton) {
        rep.verdict = Verdict::certified;
        rep.note = "single-vertex block: the restricted products are single "
                   "entries, so the subdiagram is trivially uniquely ergodic";
    } else if (divergent && rep.prerequisites) {
        rep.verdict = Verdict::certified;
        rep.note = rep.floor > 0
                       ? "in-block entries bounded below by a positive "
                         "constant; the spreads contract to zero"
                       : "in-block minimum entries form a certified "
                         "divergent series; the spreads contract to zero";
    } else if (divergent) {
        rep.verdict = Verdict::undetermined;
        rep.note = "partition prerequisites not established up to the window";
    } else if (rep.series.status == SeqStatus::certified &&
               rep.series.convergent) {
        rep.verdict = Verdict::undetermined;
        rep.note = "in-block minimum-entry series converges exactly; this "
                   "test is incomplete and does not refute unique ergodicity";
    } else {
        rep.verdict = Verdict::undetermined;
        rep.note = "no divergence certificate for the in-block entries; "
                   "partial sums reported";
    }
    return rep;
}

std::vector<std::vector<std::size_t>> dominant_parents(
    const Diagram& d,
    const std::vector<std::vector<std::vector<std::size_t>>>& level_blocks) {
    if (level_blocks.size() != d.depth())
        throw Error(ErrorKind::invalid_spec,
                    "block structure needs one block list per level");
    std::vector<std::vector<std::size_t>> out(d.depth() - 1);
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) {
        const RatMatrix& f = d.stochastic(n);
        const auto& child = level_blocks[n];
        const auto& above = level_blocks[n - 1];
        if (above.empty())
            throw Error(ErrorKind::invalid_spec,
                        "block structure has no blocks at level " + std::to_string(n));
        out[n - 1].resize(child.size());
        for (std::size_t b = 0; b < child.size(); ++b) {
            std::size_t best = 0;
            Rat best_mass(-1);
            for (std::size_t p = 0; p < above.size(); ++p) {
                Rat mass(0);
                for (std::size_t v : child[b])
                    for (std::size_t w : above[p]) mass += f(v, w);
                if (mass > best_mass) {
                    best_mass = mass;
                    best = p;
                }
            }
            out[n - 1][b] = best;
        }
    }
    return out;
}

ChainSearchResult chain_partition_search(const Diagram& d,
                                         const Rat& gap_ratio,
                                         std::size_t window) {
    if (d.depth() < 2)
        throw Error(ErrorKind::range, "chain search needs depth >= 2");
    if (window < 3)
        throw Error(ErrorKind::range, "window must be at least 3");
    if (!(gap_ratio > 0))
        throw Error(ErrorKind::invalid_spec, "gap ratio must be positive");

    std::size_t depth = d.depth();
    ChainSearchResult res;
    res.level_blocks.assign(depth, {});
    {
        std::vector<std::size_t> full(d.num_vertices(1));
        std::iota(full.begin(), full.end(), 0);
        res.level_blocks[0] = {full};
    }
    res.row_distance_floor = 0;
    bool floor_set = false;
    for (std::size_t n = 1; n <= depth - 1; ++n) {
        const RatMatrix& f = d.stochastic(n);
        std::vector<RatVec> rows;
        for (std::size_t v = 0; v < f.rows(); ++v) rows.push_back(f.row(v));
        Clustering c = cluster_extremes(rows, gap_ratio);
        res.level_blocks[n] = c.clusters;
        if (c.clusters.size() > 1 &&
            (!floor_set || c.min_inter < res.row_distance_floor)) {
            res.row_distance_floor = c.min_inter;
            floor_set = true;
        }
    }

    const auto parent = dominant_parents(d, res.level_blocks);

    std::vector<std::size_t> levels = term_levels(depth);
    for (std::size_t t = 0; t < res.level_blocks[depth - 1].size(); ++t) {
        Chain ch;
        ch.blocks.resize(depth);
        std::size_t idx = t;
        for (std::size_t l = depth; l >= 1; --l) {
            ch.blocks[l - 1] = res.level_blocks[l - 1][idx];
            if (l >= 2) idx = parent[l - 2][idx];
        }
        ch.escape_terms = escape_terms_of(d, ch.blocks);
        ch.escape = assess_series(levels, ch.escape_terms, window,
                                  escape_symbolic(d, ch.blocks));
        ch.kept = series_pass(ch.escape);
        res.chains.push_back(std::move(ch));
    }

    res.remainder.assign(depth, {});
    for (std::size_t l = 1; l <= depth; ++l) {
        std::vector<char> covered(d.num_vertices(l), 0);
        for (const Chain& ch : res.chains)
            if (ch.kept)
                for (std::size_t v : ch.blocks[l - 1]) covered[v] = 1;
        for (std::size_t v = 0; v < covered.size(); ++v)
            if (!covered[v]) res.remainder[l - 1].push_back(v);
    }

    std::vector<Rat> spread_seq, retention_seq;
    for (std::size_t n : levels) {
        const RatMatrix& f = d.stochastic(n);
        std::set<std::vector<std::size_t>> kept_blocks;
        for (const Chain& ch : res.chains)
            if (ch.kept) kept_blocks.insert(ch.blocks[n]);
        Rat spread(0);
        for (const auto& b : kept_blocks) {
            std::vector<RatVec> rows;
            for (std::size_t v : b) rows.push_back(f.row(v));
            Rat s = diameter_dstar(rows);
            if (spread < s) spread = s;
        }
        spread_seq.push_back(spread);
        Rat retain(0);
        for (std::size_t v : res.remainder[n]) {
            Rat keep = block_row_mass(f, v, res.remainder[n - 1]);
            if (retain < keep) retain = keep;
        }
        retention_seq.push_back(retain);
    }
    res.block_contraction = assess_decay(spread_seq, window);
    res.remainder_retention = assess_decay(retention_seq, window);

    Rat worst_absorb(0);
    std::size_t lo = levels.size() > window ? levels.size() - window : 0;
    for (std::size_t i = lo; i < levels.size(); ++i) {
        std::size_t n = levels[i];
        const RatMatrix& f = d.stochastic(n);
        std::set<std::vector<std::size_t>> kept_blocks;
        for (const Chain& ch : res.chains)
            if (ch.kept) kept_blocks.insert(ch.blocks[n - 1]);
        for (std::size_t v : res.remainder[n]) {
            for (const auto& b : kept_blocks) {
                Rat mass = block_row_mass(f, v, b);
                if (worst_absorb < mass) worst_absorb = mass;
            }
        }
    }
    res.c_hat = Rat(1) - worst_absorb;

    bool any_kept = std::any_of(res.chains.begin(), res.chains.end(),
                                [](const Chain& c) { return c.kept; });
    if (!any_kept)
        res.violated = "escape";
    else if (!decay_pass(res.block_contraction))
        res.violated = "contraction";
    else if (!decay_pass(res.remainder_retention))
        res.violated = "retention";
    else if (!(res.c_hat > 0))
        res.violated = "mass-cap";
    res.admissible = res.violated.empty();
    return res;
}

SupportReport support_diagnostics(const Diagram& d,
                                  const std::vector<RatVec>& trace,
                                  const std::vector<std::size_t>& block,
                                  std::size_t window) {
    if (trace.empty())
        throw Error(ErrorKind::invalid_spec, "empty trace");
    if (window < 1)
        throw Error(ErrorKind::range, "window must be at least 1");
    TraceCheck tc = verify_trace(d, trace);
    if (tc.residual != 0 || !tc.nonnegative || !tc.normalized)
        throw Error(ErrorKind::refused,
                    "trace is not an exactly tail-compatible probability "
                    "family");
    if (block.empty())
        throw Error(ErrorKind::invalid_spec, "empty support block");
    std::vector<std::size_t> b = block;
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
        throw Error(ErrorKind::invalid_spec, "support block repeats a vertex");

    SupportReport rep;
    std::size_t count = std::min<std::size_t>(window, trace.size());
    for (std::size_t n = 1; n <= count; ++n) {
        const RatVec& q = trace[n - 1];
        if (b.back() >= q.size())
            throw Error(ErrorKind::range,
                        "support block exceeds the width of level " +
                            std::to_string(n));
        Rat in = q[b.front()];
        for (std::size_t v : b)
            if (q[v] < in) in = q[v];
        Rat off(0);
        for (std::size_t v = 0; v < q.size(); ++v)
            if (!std::binary_search(b.begin(), b.end(), v) && off < q[v])
                off = q[v];
        rep.in_support.push_back(in);
        rep.off_support.push_back(off);
    }
    rep.delta_hat = rep.in_support.front();
    for (const Rat& x : rep.in_support)
        if (x < rep.delta_hat) rep.delta_hat = x;
    rep.off_decay = assess_decay(rep.off_support, window);
    return rep;
}

}  // namespace bratteli
