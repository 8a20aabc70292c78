#include "bratteli/toeplitz.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw Error(ErrorKind::invalid_spec, "toeplitz: " + msg);
}

ToeplitzStage make_stage(std::vector<int> block) {
    ToeplitzStage st;
    st.period = block.size();
    std::size_t first = block.size(), last = block.size();
    for (std::size_t i = 0; i < block.size(); ++i)
        if (block[i] < 0) {
            if (first == block.size()) first = i;
            last = i;
        }
    if (first == block.size()) bad("stage block has no holes left");
    st.lead = first;
    st.margin = st.period - last;
    st.block = std::move(block);
    return st;
}

unsigned long stage_copies(const ToeplitzSeed& seed, std::size_t s) {
    if (!seed.copy_list.empty()) {
        if (seed.copy_list.size() < seed.fills.size())
            bad("lambda list is shorter than the number of fill stages");
        return seed.copy_list[s - 1];
    }
    if (!seed.has_copy_rule) bad("missing copy counts");
    Int v = seed.copy_rule.eval(Int(s));
    if (v < 2 || !v.fits_ulong_p())
        bad("copy count at stage " + std::to_string(s) + " must be >= 2");
    return v.get_ui();
}

}  // namespace

ToeplitzBuild build_toeplitz(const ToeplitzSeed& seed) {
    if (seed.alphabet.empty()) bad("empty alphabet");
    std::set<std::string> names(seed.alphabet.begin(), seed.alphabet.end());
    if (names.size() != seed.alphabet.size()) bad("duplicate alphabet symbols");
    if (seed.block.size() < 3) bad("starting block must have at least 3 symbols");
    for (int c : seed.block)
        if (c < -1 || c >= int(seed.alphabet.size())) bad("bad symbol in starting block");

    ToeplitzBuild out;
    out.stages.push_back(make_stage(seed.block));

    for (std::size_t s = 1; s <= seed.fills.size(); ++s) {
        unsigned long lam = stage_copies(seed, s);
        const ToeplitzStage& prev = out.stages.back();
        if (lam > (std::size_t(1) << 26) / prev.period)
            throw Error(ErrorKind::resource, "toeplitz: stage period too large");
        std::vector<int> blk;
        blk.reserve(prev.period * lam);
        for (unsigned long c = 0; c < lam; ++c)
            blk.insert(blk.end(), prev.block.begin(), prev.block.end());
        const auto& fills = seed.fills[s - 1];
        if (fills.empty())
            bad("stage " + std::to_string(s) + " fills no holes");
        for (const auto& [pos, sym] : fills) {
            if (pos >= blk.size())
                bad("fill position " + std::to_string(pos) + " beyond stage " +
                    std::to_string(s) + " period " + std::to_string(blk.size()));
            if (blk[pos] != -1)
                bad("fill position " + std::to_string(pos) + " at stage " +
                    std::to_string(s) + " is not a hole");
            if (sym < 0 || sym >= int(seed.alphabet.size())) bad("bad fill symbol");
            blk[pos] = sym;
        }
        out.stages.push_back(make_stage(std::move(blk)));
    }

    const ToeplitzStage& top = out.stages.back();
    out.window_lo = -(static_cast<long long>(top.margin) - 1);
    out.window_hi = static_cast<long long>(top.lead) - 1;
    long long p = static_cast<long long>(top.period);
    for (long long i = out.window_lo; i <= out.window_hi; ++i)
        out.window.push_back(top.block[std::size_t(((i % p) + p) % p)]);
    out.boundaries_advance = out.stages.size() >= 3;
    for (std::size_t n = 2; n < out.stages.size(); ++n)
        if (out.stages[n].lead <= out.stages[n - 2].lead ||
            out.stages[n].margin <= out.stages[n - 2].margin)
            out.boundaries_advance = false;
    return out;
}

std::vector<int> stage_window(const ToeplitzBuild& b, std::size_t stage,
                              std::size_t radius) {
    if (stage >= b.stages.size())
        throw Error(ErrorKind::range,
                    "stage " + std::to_string(stage) + " beyond the built " +
                        std::to_string(b.stages.size() - 1));
    const ToeplitzStage& st = b.stages[stage];
    std::size_t cap = std::min(st.lead, st.margin) - 1;
    if (radius > cap)
        throw Error(ErrorKind::range,
                    "stage " + std::to_string(stage) +
                        " determines the central window only to radius " +
                        std::to_string(cap));
    long long p = static_cast<long long>(st.period);
    std::vector<int> out;
    for (long long i = -(long long)radius; i <= (long long)radius; ++i)
        out.push_back(st.block[std::size_t(((i % p) + p) % p)]);
    return out;
}

int window_symbol(const ToeplitzBuild& b, long long pos) {
    if (pos < b.window_lo || pos > b.window_hi)
        throw Error(ErrorKind::range,
                    "position " + std::to_string(pos) + " outside the determined window [" +
                        std::to_string(b.window_lo) + ", " + std::to_string(b.window_hi) + "]");
    return b.window[std::size_t(pos - b.window_lo)];
}

ToeplitzFamilies toeplitz_families(const ToeplitzSeed& seed, std::size_t depth) {
    ToeplitzFamilies out;
    out.build = build_toeplitz(seed);
    const auto& stages = out.build.stages;
    if (depth == 0) bad("depth must be >= 1");
    if (depth >= stages.size())
        bad("seed defines stages 0.." + std::to_string(stages.size() - 1) +
            "; depth " + std::to_string(depth) + " needs more fill stages");

    out.families.assign(depth + 1, {});
    const std::vector<int>& top = stages.back().block;
    std::size_t pd = stages[depth].period;
    std::set<std::vector<int>> uniq;
    for (std::size_t off = 0; off + pd <= top.size(); off += pd) {
        std::vector<int> slice(top.begin() + off, top.begin() + off + pd);
        if (std::find(slice.begin(), slice.end(), -1) == slice.end())
            uniq.insert(std::move(slice));
    }
    if (uniq.empty())
        bad("no fully determined level-" + std::to_string(depth) +
            " block; provide more fill stages");
    out.families[depth].assign(uniq.begin(), uniq.end());

    for (std::size_t n = depth; n > 1;) {
        --n;
        std::set<std::vector<int>> kids;
        std::size_t pn = stages[n].period;
        for (const auto& parent : out.families[n + 1])
            for (std::size_t off = 0; off + pn <= parent.size(); off += pn)
                kids.insert(std::vector<int>(parent.begin() + off,
                                             parent.begin() + off + pn));
        out.families[n].assign(kids.begin(), kids.end());
    }

    IntMatrix root(out.families[1].size(), 1);
    for (std::size_t i = 0; i < out.families[1].size(); ++i)
        root(i, 0) = Int(stages[1].period);
    out.incidence.push_back(std::move(root));

    for (std::size_t n = 1; n < depth; ++n) {
        const auto& lower = out.families[n];
        const auto& upper = out.families[n + 1];
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = i;
        IntMatrix m(upper.size(), lower.size());
        std::size_t pn = stages[n].period;
        for (std::size_t v = 0; v < upper.size(); ++v)
            for (std::size_t off = 0; off + pn <= upper[v].size(); off += pn) {
                std::vector<int> piece(upper[v].begin() + off,
                                       upper[v].begin() + off + pn);
                m(v, index.at(piece)) += 1;
            }
        out.incidence.push_back(std::move(m));
    }
    return out;
}

std::string block_label(const ToeplitzSeed& seed, const std::vector<int>& block) {
    bool chars = true;
    for (const std::string& s : seed.alphabet)
        if (s.size() != 1) chars = false;
    std::string out;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (!chars && i) out += ",";
        out += block[i] < 0 ? "_" : seed.alphabet[std::size_t(block[i])];
    }
    return out;
}

}  // namespace bratteli
