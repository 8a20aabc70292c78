#include "bratteli/symbolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

constexpr unsigned long kWordCap = 4000000;  // materialized symbols per level

std::size_t checked_size(const Int& n, const std::string& what) {
    if (!n.fits_ulong_p() || n.get_ui() > kWordCap)
        throw Error(ErrorKind::resource, what + " too large to materialize");
    return std::size_t(n.get_ui());
}

// Incoming-edge order of `vertex` at `level`, guarded against rows whose
// edge count cannot be materialized.
std::vector<std::size_t> sources_of(const Diagram& d, std::size_t level,
                                    std::size_t vertex) {
    const IntMatrix& m = d.incidence(level - 1);
    Int total = 0;
    for (std::size_t w = 0; w < m.cols(); ++w) total += m(vertex, w);
    checked_size(total, "edge order at level " + std::to_string(level));
    return d.edge_sources(level, vertex);
}

// Height of `vertex` at `level`, with level 0 meaning the root.
const Int& height_of(const Diagram& d, std::size_t level, std::size_t vertex) {
    static const Int one(1);
    if (level == 0) return one;
    return d.heights(level)[vertex];
}

// Rewrite levels 1..upto of the path as the minimal or maximal path to
// `vertex` at level `upto`.
void fill_extreme(const Diagram& d, FinitePath& p, std::size_t upto,
                  std::size_t vertex, bool maximal) {
    std::size_t cur = vertex;
    for (std::size_t j = upto; j-- > 0;) {
        std::vector<std::size_t> srcs = sources_of(d, j + 1, cur);
        p.vertices[j] = cur;
        p.edges[j] = maximal ? srcs.size() - 1 : 0;
        cur = srcs[p.edges[j]];
    }
}

std::optional<FinitePath> step(const Diagram& d, const FinitePath& p,
                               bool forward) {
    validate_path(d, p);
    FinitePath q = p;
    for (std::size_t j = 0; j < q.level(); ++j) {
        std::vector<std::size_t> srcs = sources_of(d, j + 1, q.vertices[j]);
        bool extremal = forward ? q.edges[j] + 1 == srcs.size() : q.edges[j] == 0;
        if (extremal) continue;
        q.edges[j] = forward ? q.edges[j] + 1 : q.edges[j] - 1;
        if (j > 0) fill_extreme(d, q, j, srcs[q.edges[j]], !forward);
        return q;
    }
    return std::nullopt;
}

}  // namespace

void validate_path(const Diagram& d, const FinitePath& p) {
    if (p.vertices.empty() || p.vertices.size() != p.edges.size())
        throw Error(ErrorKind::invalid_spec,
                    "path needs one vertex and one edge per level");
    if (p.level() > d.depth())
        throw Error(ErrorKind::range, "path deeper than the diagram");
    for (std::size_t j = 0; j < p.level(); ++j) {
        if (p.vertices[j] >= d.num_vertices(j + 1))
            throw Error(ErrorKind::range, "path vertex out of range at level " +
                                              std::to_string(j + 1));
        std::vector<std::size_t> srcs = sources_of(d, j + 1, p.vertices[j]);
        if (p.edges[j] >= srcs.size())
            throw Error(ErrorKind::range, "path edge out of range at level " +
                                              std::to_string(j + 1));
        if (j > 0 && srcs[p.edges[j]] != p.vertices[j - 1])
            throw Error(ErrorKind::invalid_spec,
                        "path edge at level " + std::to_string(j + 1) +
                            " does not start at the level-" + std::to_string(j) +
                            " vertex");
    }
}

Diagram with_order(const Diagram& d, OrderMap order) {
    std::vector<IntMatrix> inc;
    inc.reserve(d.depth());
    for (std::size_t n = 0; n < d.depth(); ++n) inc.push_back(d.incidence(n));
    std::shared_ptr<const DiagramSpec> sp;
    if (d.spec()) {
        auto copy = std::make_shared<DiagramSpec>(*d.spec());
        copy->order = order;
        sp = std::move(copy);
    }
    return Diagram(std::move(inc), std::move(sp), std::move(order));
}

Diagram consecutive_order(const Diagram& d, OrderMap order) {
    Diagram out = with_order(d, std::move(order));
    for (std::size_t n = 1; n <= out.depth(); ++n)
        for (std::size_t v = 0; v < out.num_vertices(n); ++v) {
            std::vector<std::size_t> srcs = sources_of(out, n, v);
            std::set<std::size_t> closed;
            for (std::size_t i = 0; i < srcs.size(); ++i) {
                if (i && srcs[i] == srcs[i - 1]) continue;
                if (!closed.insert(srcs[i]).second)
                    throw Error(ErrorKind::invalid_spec,
                                "order for level " + std::to_string(n) +
                                    " vertex " + std::to_string(v) +
                                    " splits the edges from source " +
                                    std::to_string(srcs[i]));
            }
        }
    return out;
}

FinitePath min_path(const Diagram& d, std::size_t level, std::size_t vertex) {
    if (level < 1 || level > d.depth())
        throw Error(ErrorKind::range, "path level outside 1..depth");
    if (vertex >= d.num_vertices(level))
        throw Error(ErrorKind::range, "path vertex out of range");
    FinitePath p;
    p.vertices.assign(level, 0);
    p.edges.assign(level, 0);
    fill_extreme(d, p, level, vertex, false);
    return p;
}

FinitePath max_path(const Diagram& d, std::size_t level, std::size_t vertex) {
    FinitePath p = min_path(d, level, vertex);
    fill_extreme(d, p, level, vertex, true);
    return p;
}

std::optional<FinitePath> vershik_successor(const Diagram& d,
                                            const FinitePath& p) {
    return step(d, p, true);
}

std::optional<FinitePath> vershik_predecessor(const Diagram& d,
                                              const FinitePath& p) {
    return step(d, p, false);
}

Int path_rank(const Diagram& d, const FinitePath& p) {
    validate_path(d, p);
    Int rank = 0;
    for (std::size_t j = 0; j < p.level(); ++j) {
        std::vector<std::size_t> srcs = sources_of(d, j + 1, p.vertices[j]);
        for (std::size_t k = 0; k < p.edges[j]; ++k)
            rank += height_of(d, j, srcs[k]);
    }
    return rank;
}

FinitePath path_from_rank(const Diagram& d, std::size_t level,
                          std::size_t vertex, Int rank) {
    if (level < 1 || level > d.depth())
        throw Error(ErrorKind::range, "path level outside 1..depth");
    if (vertex >= d.num_vertices(level))
        throw Error(ErrorKind::range, "path vertex out of range");
    if (rank < 0 || rank >= d.heights(level)[vertex])
        throw Error(ErrorKind::range,
                    "rank outside the tower over vertex " +
                        std::to_string(vertex) + " at level " +
                        std::to_string(level));
    FinitePath p;
    p.vertices.assign(level, 0);
    p.edges.assign(level, 0);
    std::size_t cur = vertex;
    for (std::size_t j = level; j-- > 0;) {
        std::vector<std::size_t> srcs = sources_of(d, j + 1, cur);
        p.vertices[j] = cur;
        std::size_t k = 0;
        while (rank >= height_of(d, j, srcs[k])) {
            rank -= height_of(d, j, srcs[k]);
            ++k;
        }
        p.edges[j] = k;
        cur = srcs[k];
    }
    return p;
}

std::size_t alphabet_size(const Diagram& d, std::size_t n0) {
    if (n0 < 1 || n0 > d.depth())
        throw Error(ErrorKind::range, "alphabet level outside 1..depth");
    Int total = 0;
    for (const Int& h : d.heights(n0)) total += h;
    return checked_size(total, "path alphabet at level " + std::to_string(n0));
}

std::size_t path_symbol(const Diagram& d, std::size_t n0,
                        const FinitePath& p) {
    validate_path(d, p);
    if (n0 < 1 || n0 > p.level())
        throw Error(ErrorKind::range, "symbol level outside the path");
    alphabet_size(d, n0);
    FinitePath trunc;
    trunc.vertices.assign(p.vertices.begin(), p.vertices.begin() + n0);
    trunc.edges.assign(p.edges.begin(), p.edges.begin() + n0);
    Int offset = 0;
    for (std::size_t w = 0; w < trunc.top(); ++w) offset += d.heights(n0)[w];
    return checked_size(offset + path_rank(d, trunc), "path symbol");
}

ExtremeCount count_extremes(const Diagram& d) {
    ExtremeCount out;
    std::size_t depth = d.depth();
    std::vector<std::size_t> min_sizes, max_sizes;
    for (int side = 0; side < 2; ++side) {
        std::set<std::size_t> image;
        for (std::size_t v = 0; v < d.num_vertices(depth); ++v) image.insert(v);
        std::vector<std::size_t>& sizes = side ? max_sizes : min_sizes;
        sizes.assign(depth, 0);
        sizes[depth - 1] = image.size();
        for (std::size_t n = depth; n-- > 1;) {
            std::set<std::size_t> next;
            for (std::size_t v : image) {
                std::vector<std::size_t> srcs = sources_of(d, n + 1, v);
                next.insert(side ? srcs.back() : srcs.front());
            }
            image.swap(next);
            sizes[n - 1] = image.size();
        }
        (side ? out.maximal : out.minimal) = image.size();
    }
    out.stable = true;
    for (std::size_t n = 1; n <= std::max<std::size_t>(1, depth / 2); ++n) {
        if (min_sizes[n - 1] != out.minimal) out.stable = false;
        if (max_sizes[n - 1] != out.maximal) out.stable = false;
    }
    if (out.minimal == 1 && out.maximal == 1) out.rollover = {0};
    return out;
}

BlockFamily blocks(const Diagram& d, std::size_t n0, std::size_t n) {
    if (n0 < 1 || n < n0 || n > d.depth())
        throw Error(ErrorKind::range, "block levels need 1 <= n0 <= n <= depth");
    BlockFamily fam;
    fam.base_level = n0;
    fam.level = n0;
    fam.alphabet = alphabet_size(d, n0);
    std::size_t offset = 0;
    for (std::size_t w = 0; w < d.num_vertices(n0); ++w) {
        std::size_t h = checked_size(d.heights(n0)[w], "tower word");
        std::vector<std::size_t> word(h);
        std::iota(word.begin(), word.end(), offset);
        offset += h;
        fam.words.push_back(std::move(word));
    }
    for (std::size_t m = n0; m < n; ++m) {
        Int total = 0;
        for (const Int& h : d.heights(m + 1)) total += h;
        checked_size(total, "block family at level " + std::to_string(m + 1));
        std::vector<std::vector<std::size_t>> next;
        std::vector<std::vector<std::size_t>> pieces;
        for (std::size_t v = 0; v < d.num_vertices(m + 1); ++v) {
            std::vector<std::size_t> word;
            std::vector<std::size_t> srcs = sources_of(d, m + 1, v);
            for (std::size_t w : srcs)
                word.insert(word.end(), fam.words[w].begin(),
                            fam.words[w].end());
            next.push_back(std::move(word));
            pieces.push_back(std::move(srcs));
        }
        fam.words.swap(next);
        fam.pieces.swap(pieces);
        fam.level = m + 1;
    }
    return fam;
}

RecoveredIncidence incidence_from_blocks(const BlockFamily& lower,
                                         const BlockFamily& upper) {
    if (lower.base_level != upper.base_level ||
        lower.alphabet != upper.alphabet || upper.level != lower.level + 1 ||
        upper.pieces.size() != upper.words.size())
        throw Error(ErrorKind::invalid_spec,
                    "block families are not consecutive levels of one "
                    "construction");
    RecoveredIncidence out;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::size_t> class_of(lower.words.size());
    for (std::size_t w = 0; w < lower.words.size(); ++w) {
        auto [it, fresh] = index.emplace(lower.words[w], out.classes.size());
        if (fresh) {
            out.classes.push_back({w});
        } else {
            out.classes[it->second].push_back(w);
            out.quotient = true;
        }
        class_of[w] = it->second;
    }
    out.matrix = IntMatrix(upper.words.size(), out.classes.size());
    for (std::size_t v = 0; v < upper.words.size(); ++v) {
        const std::vector<std::size_t>& word = upper.words[v];
        std::size_t pos = 0;
        bool ok = true;
        for (std::size_t w : upper.pieces[v]) {
            if (w >= lower.words.size()) { ok = false; break; }
            const auto& piece = lower.words[w];
            if (pos + piece.size() > word.size() ||
                !std::equal(piece.begin(), piece.end(), word.begin() + pos)) {
                ok = false;
                break;
            }
            pos += piece.size();
            out.matrix(v, class_of[w]) += 1;
        }
        if (!ok || pos != word.size())
            throw Error(ErrorKind::invalid_spec,
                        "word of vertex " + std::to_string(v) +
                            " is not a concatenation of the lower words");
    }
    return out;
}

std::vector<std::size_t> code_forward(const Diagram& d, std::size_t n0,
                                      const FinitePath& start,
                                      std::size_t count) {
    validate_path(d, start);
    if (count == 0)
        throw Error(ErrorKind::range, "coding needs at least one symbol");
    Int room = d.heights(start.level())[start.top()] - path_rank(d, start);
    if (room < long(count))
        throw Error(ErrorKind::range,
                    "forward window of " + std::to_string(count) +
                        " symbols leaves the materialized tower; at most " +
                        room.get_str() + " remain from this path");
    std::vector<std::size_t> word;
    word.reserve(count);
    FinitePath cur = start;
    for (std::size_t i = 0; i < count; ++i) {
        word.push_back(path_symbol(d, n0, cur));
        if (i + 1 < count) cur = *vershik_successor(d, cur);
    }
    return word;
}

std::vector<std::size_t> code_orbit(const Diagram& d, std::size_t n0,
                                    const FinitePath& start,
                                    std::size_t radius) {
    validate_path(d, start);
    FinitePath cur = start;
    while (cur.level() < d.depth()) {
        std::size_t level = cur.level() + 1;
        std::size_t w = cur.top();
        bool found = false;
        for (std::size_t v = 0; v < d.num_vertices(level) && !found; ++v) {
            std::vector<std::size_t> srcs = sources_of(d, level, v);
            auto it = std::find(srcs.begin(), srcs.end(), w);
            if (it == srcs.end()) continue;
            cur.vertices.push_back(v);
            cur.edges.push_back(std::size_t(it - srcs.begin()));
            found = true;
        }
        if (!found)
            throw Error(ErrorKind::invalid_diagram,
                        "no edge continues the path above level " +
                            std::to_string(cur.level()));
    }
    Int rank = path_rank(d, cur);
    Int back = rank;
    Int forward = d.heights(d.depth())[cur.top()] - 1 - rank;
    if (back < long(radius) || forward < long(radius)) {
        Int feasible = back < forward ? back : forward;
        throw Error(ErrorKind::range,
                    "window radius " + std::to_string(radius) +
                        " leaves the materialized tower; the largest feasible "
                        "radius from this path is " +
                        feasible.get_str());
    }
    FinitePath base =
        path_from_rank(d, d.depth(), cur.top(), rank - long(radius));
    return code_forward(d, n0, base, 2 * radius + 1);
}

}  // namespace bratteli
