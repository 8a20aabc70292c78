#include "bratteli/series.hpp"

#include <algorithm>
#include <set>

#include "bratteli/error.hpp"

namespace bratteli {

const char* seq_status_name(SeqStatus s) {
    switch (s) {
        case SeqStatus::exact_zero: return "exact-zero";
        case SeqStatus::certified: return "certified";
        case SeqStatus::evidence: return "evidence";
        case SeqStatus::failed: return "failed";
    }
    return "unknown";
}

namespace {

const Rat& ratio_cap() {
    static const Rat cap(9, 10);
    return cap;
}

// Max consecutive ratio over the trailing `window` values.  Returns false
// when a zero value is followed by a positive one: no geometric bound then.
bool window_ratio(const std::vector<Rat>& seq, std::size_t window, Rat& worst) {
    std::size_t w = std::min(window, seq.size());
    if (w < 2) return false;
    worst = 0;
    for (std::size_t i = seq.size() - w + 1; i < seq.size(); ++i) {
        if (seq[i] == 0) continue;  // dropping to exact zero is fine
        if (seq[i - 1] == 0) return false;
        Rat r = seq[i] / seq[i - 1];
        if (worst < r) worst = r;
    }
    return true;
}

Int level_int(std::size_t n) { return Int(static_cast<unsigned long>(n)); }

}  // namespace

DecayAssessment assess_decay(const std::vector<Rat>& seq, std::size_t window) {
    DecayAssessment a;
    a.last = seq.empty() ? Rat(0) : seq.back();
    a.worst_ratio = 0;
    if (seq.empty()) {
        a.status = SeqStatus::failed;
        a.note = "no values to assess";
        return a;
    }
    if (std::all_of(seq.begin(), seq.end(),
                    [](const Rat& t) { return t == 0; })) {
        a.status = SeqStatus::exact_zero;
        a.note = "identically zero";
        return a;
    }
    Rat worst;
    if (!window_ratio(seq, window, worst)) {
        a.status = SeqStatus::failed;
        a.note = "trailing window too short or not monotone at zero";
        return a;
    }
    a.worst_ratio = worst;
    if (worst <= ratio_cap()) {
        a.status = SeqStatus::evidence;
        a.note = "trailing-window ratios at most 9/10";
    } else {
        a.status = SeqStatus::failed;
        a.note = "trailing-window ratio above 9/10";
    }
    return a;
}

SeriesAssessment assess_series(const std::vector<std::size_t>& levels,
                               const std::vector<Rat>& terms,
                               std::size_t window,
                               const std::optional<SymbolicTerm>& symbolic) {
    if (levels.size() != terms.size())
        throw Error(ErrorKind::range, "series levels/terms size mismatch");
    SeriesAssessment a;
    a.convergent = false;
    a.partial_sum = 0;
    for (const Rat& t : terms) {
        if (t < 0)
            throw Error(ErrorKind::range, "series terms must be nonnegative");
        a.partial_sum += t;
    }
    a.last = terms.empty() ? Rat(0) : terms.back();
    if (symbolic) {
        SeriesCertificate cert = classify_series(symbolic->ratio);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            Int n = level_int(levels[i]);
            if (n < symbolic->valid_from) continue;
            if (terms[i] != symbolic->ratio.eval(n)) {
                a.status = SeqStatus::failed;
                a.note = "closed form disagrees with computed term at level " +
                         std::to_string(levels[i]);
                return a;
            }
        }
        a.status = SeqStatus::certified;
        a.convergent = cert.cls == SeriesClass::convergent;
        a.certificate = cert;
        a.term = symbolic->ratio.str();
        a.note = a.convergent
                     ? "closed-form term with degree gap at least 2"
                     : "closed-form term with degree gap at most 1";
        return a;
    }
    if (std::all_of(terms.begin(), terms.end(),
                    [](const Rat& t) { return t == 0; })) {
        a.status = SeqStatus::exact_zero;
        a.convergent = true;
        a.note = "all terms exactly zero";
        return a;
    }
    Rat worst;
    if (!window_ratio(terms, window, worst)) {
        a.status = SeqStatus::failed;
        a.note = "trailing window too short or not monotone at zero";
        return a;
    }
    if (worst <= ratio_cap()) {
        a.status = SeqStatus::evidence;
        a.convergent = true;
        a.note = "trailing-window ratios at most 9/10";
    } else {
        a.status = SeqStatus::failed;
        a.note = "trailing-window ratio above 9/10";
    }
    return a;
}

namespace {

struct PolyGrid {
    std::vector<std::vector<Poly>> e;  // entry polynomials, k x k
    Poly row_sum;                      // common row-sum polynomial
};

// Entry grid as polynomials with one shared row-sum polynomial, when the
// diagram was generated from polynomial level rules with equal row sums.
std::optional<PolyGrid> poly_grid(const DiagramSpec& sp) {
    if (sp.generator != Generator::entries) return std::nullopt;
    PolyGrid g;
    std::size_t k = sp.entry_rules.size();
    g.e.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        Poly sum;
        for (std::size_t j = 0; j < k; ++j) {
            if (!sp.entry_rules[i][j].polynomial()) return std::nullopt;
            g.e[i].push_back(sp.entry_rules[i][j].to_poly());
            sum = sum + g.e[i][j];
        }
        if (i == 0)
            g.row_sum = sum;
        else if (!(sum == g.row_sum))
            return std::nullopt;
    }
    return g;
}

// Eventual extreme of candidate numerators (shared positive denominator
// implied); `from` accumulates the level where every comparison is settled.
Poly eventual_extreme(const std::vector<Poly>& cands, bool want_min,
                      Int& from) {
    Poly one = Poly::constant(1);
    Poly best = cands.front();
    for (std::size_t i = 1; i < cands.size(); ++i) {
        EventualOrder o =
            eventual_compare(PolyRatio{best, one}, PolyRatio{cands[i], one});
        if (from < o.valid_from) from = o.valid_from;
        if (want_min ? o.order == Ordering::greater
                     : o.order == Ordering::less)
            best = cands[i];
    }
    return best;
}

Int max_int(const Int& a, const Int& b) { return a < b ? b : a; }

}  // namespace

std::optional<SymbolicTerm> symbolic_min_entry(const Diagram& d) {
    const DiagramSpec* sp = d.spec();
    if (!sp) return std::nullopt;
    if (sp->generator == Generator::countable) {
        if (!sp->countable_rule.polynomial()) return std::nullopt;
        Poly a = sp->countable_rule.to_poly();
        Poly den = a + Poly::var();
        Int from(1);
        std::vector<Poly> cands{Poly::constant(1), a};
        Poly num = eventual_extreme(cands, true, from);
        from = max_int(from, den.positivity_bound());
        return SymbolicTerm{PolyRatio{num, den}, max_int(from, Int(1))};
    }
    if (auto g = poly_grid(*sp)) {
        std::vector<Poly> cands;
        for (const auto& row : g->e)
            for (const Poly& p : row) cands.push_back(p);
        Int from(1);
        Poly num = eventual_extreme(cands, true, from);
        from = max_int(from, g->row_sum.positivity_bound());
        return SymbolicTerm{PolyRatio{num, g->row_sum}, max_int(from, Int(1))};
    }
    return std::nullopt;
}

std::optional<SymbolicTerm> symbolic_block_deficiency(
    const Diagram& d, const std::vector<std::size_t>& block) {
    const DiagramSpec* sp = d.spec();
    if (!sp || block.empty()) return std::nullopt;
    std::set<std::size_t> members(block.begin(), block.end());
    if (members.size() != block.size()) return std::nullopt;
    if (sp->generator == Generator::countable) {
        if (!sp->countable_rule.polynomial()) return std::nullopt;
        Poly a = sp->countable_rule.to_poly();
        std::size_t mx = *members.rbegin();
        // For n > mx every block vertex v has its diagonal weight a_n inside
        // the block, so the worst in-block mass is (a_n + |W| - 1) / (a_n + n)
        // for every block row alike.
        Poly den = a + Poly::var();
        Poly num = Poly::var() -
                   Poly::constant(Int(static_cast<unsigned long>(block.size() - 1)));
        Int from = max_int(level_int(mx + 1), den.positivity_bound());
        return SymbolicTerm{PolyRatio{num, den}, max_int(from, Int(1))};
    }
    if (auto g = poly_grid(*sp)) {
        std::size_t k = g->e.size();
        if (*members.rbegin() >= k) return std::nullopt;
        std::vector<Poly> cands;
        for (std::size_t v : members) {
            Poly in_mass;
            for (std::size_t w : members) in_mass = in_mass + g->e[v][w];
            cands.push_back(g->row_sum - in_mass);
        }
        Int from(1);
        Poly num = eventual_extreme(cands, false, from);
        from = max_int(from, g->row_sum.positivity_bound());
        return SymbolicTerm{PolyRatio{num, g->row_sum}, max_int(from, Int(1))};
    }
    return std::nullopt;
}

std::optional<SymbolicTerm> symbolic_block_min_entry(
    const Diagram& d, const std::vector<std::size_t>& block) {
    const DiagramSpec* sp = d.spec();
    if (!sp || block.empty()) return std::nullopt;
    std::set<std::size_t> members(block.begin(), block.end());
    if (members.size() != block.size()) return std::nullopt;
    if (sp->generator == Generator::countable) {
        if (!sp->countable_rule.polynomial()) return std::nullopt;
        Poly a = sp->countable_rule.to_poly();
        std::size_t mx = *members.rbegin();
        Poly den = a + Poly::var();
        // Block rows carry the diagonal weight a_n inside the block, plus
        // unit entries on the other block columns.
        Poly num = block.size() == 1 ? a : Poly::constant(1);
        Int from = max_int(level_int(mx + 1), den.positivity_bound());
        return SymbolicTerm{PolyRatio{num, den}, max_int(from, Int(1))};
    }
    if (auto g = poly_grid(*sp)) {
        std::size_t k = g->e.size();
        if (*members.rbegin() >= k) return std::nullopt;
        std::vector<Poly> cands;
        for (std::size_t v : members)
            for (std::size_t w : members) cands.push_back(g->e[v][w]);
        Int from(1);
        Poly num = eventual_extreme(cands, true, from);
        from = max_int(from, g->row_sum.positivity_bound());
        return SymbolicTerm{PolyRatio{num, g->row_sum}, max_int(from, Int(1))};
    }
    return std::nullopt;
}

std::optional<Rat> stationary_entry_floor(const Diagram& d) {
    const DiagramSpec* sp = d.spec();
    if (!sp || sp->generator != Generator::stationary) return std::nullopt;
    const IntMatrix& b = sp->matrix;
    Int max_row_sum = 0;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        Int sum = 0;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (b(i, j) <= 0) return std::nullopt;
            sum += b(i, j);
        }
        if (max_row_sum < sum) max_row_sum = sum;
    }
    // Every level-n height is at least the previous level's maximum (row
    // sums over all-positive entries), and at most R times it; the entry
    // ratio h_w / h_v across one level is therefore at least 1/R^2.
    Int r2 = max_row_sum * max_row_sum;
    Rat floor(Int(1), r2);
    floor.canonicalize();
    return floor;
}

}  // namespace bratteli
