#include "bratteli/symbolic.hpp"

#include <algorithm>
#include <functional>

#include "bratteli/error.hpp"
#include "bratteli/toeplitz.hpp"
#include "doctest.h"

using namespace bratteli;

namespace {

Diagram from_json(const std::string& text) { return materialize(parse_spec(text)); }

Diagram growing_rank(std::size_t depth) {
    return from_json(R"({"generator":"countable","depth":)" +
                     std::to_string(depth) + "}");
}

Diagram odometer(long base, std::size_t depth) {
    return from_json(R"({"generator":"stationary","matrix":[[)" +
                     std::to_string(base) + R"(]],"depth":)" +
                     std::to_string(depth) + R"(,"root_edges":[)" +
                     std::to_string(base) + "]}");
}

Diagram pascal(std::size_t depth) {
    return from_json(R"({"generator":"pascal","depth":)" +
                     std::to_string(depth) + "}");
}

Diagram triangular(std::size_t depth) {
    return from_json(R"({"generator":"stationary","matrix":[[3,0],[1,2]],)"
                     R"("depth":)" + std::to_string(depth) + "}");
}

// Independent enumeration of the tower over (level, vertex) in adic order:
// outer loop over the vertex's incoming edges in order, inner recursion over
// the source tower.  Never touches vershik_successor.
std::vector<FinitePath> enumerate_tower(const Diagram& d, std::size_t level,
                                        std::size_t vertex) {
    if (level == 1) {
        std::vector<FinitePath> out;
        std::size_t count = d.edge_sources(1, vertex).size();
        for (std::size_t k = 0; k < count; ++k)
            out.push_back(FinitePath{{vertex}, {k}});
        return out;
    }
    std::vector<FinitePath> out;
    std::vector<std::size_t> srcs = d.edge_sources(level, vertex);
    for (std::size_t k = 0; k < srcs.size(); ++k)
        for (FinitePath p : enumerate_tower(d, level - 1, srcs[k])) {
            p.vertices.push_back(vertex);
            p.edges.push_back(k);
            out.push_back(std::move(p));
        }
    return out;
}

// 0 _ 1 block, doubling stages; odd stages fill the first hole with 1, even
// stages the last hole with 0.
ToeplitzSeed alternating_seed(std::size_t stages) {
    ToeplitzSeed seed;
    seed.alphabet = {"0", "1"};
    seed.block = {0, -1, 1};
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
        seed.copy_list.push_back(2);
        blk = std::move(next);
    }
    return seed;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected an error");
}

}  // namespace

TEST_CASE("edge orders validate against the incidence rows") {
    Diagram d = growing_rank(4);

    SUBCASE("default order groups sources ascending") {
        Diagram od = consecutive_order(d);
        CHECK(od.edge_sources(2, 0) ==
              (std::vector<std::size_t>{0, 0, 0, 1}));
        CHECK(od.edge_sources(2, 2) ==
              (std::vector<std::size_t>{0, 1, 1, 1}));
    }

    SUBCASE("grouped custom order is accepted and changes the extremes") {
        OrderMap order;
        order[{2, 0}] = {1, 0, 0, 0};
        Diagram od = consecutive_order(d, order);
        CHECK(od.edge_sources(2, 0) ==
              (std::vector<std::size_t>{1, 0, 0, 0}));
        CHECK(min_path(od, 2, 0).vertices == (std::vector<std::size_t>{1, 0}));
        CHECK(max_path(od, 2, 0).vertices == (std::vector<std::size_t>{0, 0}));
    }

    SUBCASE("splitting a source is rejected, raw lists may do it") {
        OrderMap order;
        order[{2, 0}] = {0, 1, 0, 0};
        CHECK(kind_of([&] { consecutive_order(d, order); }) ==
              ErrorKind::invalid_spec);
        Diagram raw = with_order(d, order);
        CHECK(raw.edge_sources(2, 0) ==
              (std::vector<std::size_t>{0, 1, 0, 0}));
    }

    SUBCASE("edge multiset mismatches are rejected outright") {
        OrderMap order;
        order[{2, 0}] = {0, 0, 1, 1};
        CHECK(kind_of([&] { with_order(d, order); }) == ErrorKind::invalid_spec);
    }
}

TEST_CASE("adic steps carry like odometer digits") {
    Diagram d = odometer(3, 4);
    REQUIRE(d.heights(4)[0] == 81);

    FinitePath p = min_path(d, 4, 0);
    CHECK(p.edges == (std::vector<std::size_t>{0, 0, 0, 0}));
    for (long r = 0; r < 81; ++r) {
        CHECK(path_rank(d, p) == r);
        for (std::size_t j = 0; j < 4; ++j) {
            long digit = r;
            for (std::size_t k = 0; k < j; ++k) digit /= 3;
            CHECK(p.edges[j] == std::size_t(digit % 3));
        }
        auto next = vershik_successor(d, p);
        if (r == 80) {
            CHECK(!next);
            CHECK(p == max_path(d, 4, 0));
        } else {
            REQUIRE(next);
            auto back = vershik_predecessor(d, *next);
            REQUIRE(back);
            CHECK(*back == p);
            p = *next;
        }
    }
    CHECK(!vershik_predecessor(d, min_path(d, 4, 0)));
}

TEST_CASE("successor walks the tower in brute-force order") {
    Diagram d = growing_rank(3);

    SUBCASE("level-2 towers have one path per unit of height") {
        for (std::size_t v = 0; v < 3; ++v) {
            std::vector<FinitePath> tower = enumerate_tower(d, 2, v);
            // a_0 * (a_1 + 1) paths into each level-2 vertex
            REQUIRE(tower.size() == 8);
            CHECK(Int(long(tower.size())) == d.heights(2)[v]);
            FinitePath p = min_path(d, 2, v);
            for (std::size_t i = 0; i < tower.size(); ++i) {
                CHECK(p == tower[i]);
                CHECK(path_rank(d, p) == long(i));
                CHECK(path_from_rank(d, 2, v, Int(long(i))) == p);
                auto next = vershik_successor(d, p);
                if (i + 1 < tower.size()) {
                    REQUIRE(next);
                    p = *next;
                } else {
                    CHECK(!next);
                }
            }
        }
    }

    SUBCASE("custom order at the top level reorders the enumeration") {
        OrderMap order;
        std::vector<std::size_t> reversed{2, 1};
        for (int i = 0; i < 10; ++i) reversed.push_back(0);
        order[{3, 0}] = reversed;
        Diagram od = consecutive_order(growing_rank(3), order);
        std::vector<FinitePath> tower = enumerate_tower(od, 3, 0);
        REQUIRE(Int(long(tower.size())) == od.heights(3)[0]);
        FinitePath p = min_path(od, 3, 0);
        CHECK(p.vertices == (std::vector<std::size_t>{0, 2, 0}));
        for (std::size_t i = 0; i < tower.size(); ++i) {
            CHECK(p == tower[i]);
            auto next = vershik_successor(od, p);
            if (i + 1 < tower.size())
                p = *next;
            else
                CHECK(!next);
        }
    }

    SUBCASE("successor and predecessor invert each other exhaustively") {
        Diagram t = triangular(4);
        for (std::size_t v = 0; v < 2; ++v) {
            REQUIRE(t.heights(4)[v] == 27);
            FinitePath p = min_path(t, 4, v);
            std::size_t seen = 1;
            while (auto next = vershik_successor(t, p)) {
                auto back = vershik_predecessor(t, *next);
                REQUIRE(back);
                CHECK(*back == p);
                p = *next;
                ++seen;
            }
            CHECK(seen == 27);
            CHECK(p == max_path(t, 4, v));
        }
    }
}

TEST_CASE("path validation") {
    Diagram d = growing_rank(3);
    CHECK(kind_of([&] { validate_path(d, FinitePath{}); }) ==
          ErrorKind::invalid_spec);
    CHECK(kind_of([&] { validate_path(d, FinitePath{{0, 0}, {0}}); }) ==
          ErrorKind::invalid_spec);
    CHECK(kind_of([&] {
              validate_path(d, FinitePath{{0, 0, 0, 0}, {0, 0, 0, 0}});
          }) == ErrorKind::range);
    CHECK(kind_of([&] { validate_path(d, FinitePath{{5}, {0}}); }) ==
          ErrorKind::range);
    CHECK(kind_of([&] { validate_path(d, FinitePath{{0}, {9}}); }) ==
          ErrorKind::range);
    // edge 3 of level-2 vertex 0 comes from vertex 1, not vertex 0
    CHECK(kind_of([&] { validate_path(d, FinitePath{{0, 0}, {0, 3}}); }) ==
          ErrorKind::invalid_spec);
    CHECK_NOTHROW(validate_path(d, FinitePath{{1, 0}, {0, 3}}));
}

TEST_CASE("tower words concatenate along the edge orders") {
    SUBCASE("doubling odometer") {
        Diagram d = odometer(2, 3);
        BlockFamily base = blocks(d, 1, 1);
        CHECK(base.alphabet == 2);
        CHECK(base.words == (std::vector<std::vector<std::size_t>>{{0, 1}}));
        BlockFamily up = blocks(d, 1, 2);
        CHECK(up.words ==
              (std::vector<std::vector<std::size_t>>{{0, 1, 0, 1}}));
    }

    SUBCASE("growing rank: lengths equal heights, content follows sources") {
        Diagram d = growing_rank(4);
        for (std::size_t n = 1; n <= 4; ++n) {
            BlockFamily fam = blocks(d, 1, n);
            REQUIRE(fam.words.size() == d.num_vertices(n));
            for (std::size_t w = 0; w < fam.words.size(); ++w)
                CHECK(Int(long(fam.words[w].size())) == d.heights(n)[w]);
        }
        BlockFamily two = blocks(d, 1, 2);
        // level-2 vertex 0 reads its edges as sources 0,0,0,1
        CHECK(two.words[0] == (std::vector<std::size_t>{0, 1, 0, 1, 0, 1, 2, 3}));
        CHECK(two.words[2] == (std::vector<std::size_t>{0, 1, 2, 3, 2, 3, 2, 3}));
    }

    SUBCASE("base families above level 1 renumber the towers") {
        Diagram d = growing_rank(3);
        BlockFamily fam = blocks(d, 2, 2);
        CHECK(fam.alphabet == 24);
        CHECK(fam.words[1].front() == 8);
        CHECK(fam.words[2].back() == 23);
    }

    CHECK(kind_of([&] { blocks(growing_rank(3), 2, 1); }) == ErrorKind::range);
    CHECK(kind_of([&] { blocks(growing_rank(3), 0, 2); }) == ErrorKind::range);
}

TEST_CASE("occurrence counts recover the incidence matrices") {
    SUBCASE("distinct towers recover the matrices exactly") {
        Diagram d = pascal(5);
        for (std::size_t n = 1; n <= 3; ++n) {
            RecoveredIncidence rec = incidence_from_blocks(
                blocks(d, 1, n), blocks(d, 1, n + 1));
            CHECK(!rec.quotient);
            CHECK(rec.matrix == d.incidence(n));
        }
    }

    SUBCASE("the sliding pair quotients and then absorbs its parents") {
        Diagram d = growing_rank(5);
        RecoveredIncidence one =
            incidence_from_blocks(blocks(d, 1, 1), blocks(d, 1, 2));
        CHECK(!one.quotient);
        CHECK(one.matrix == d.incidence(1));

        // the two newest towers repeat the same word, so their columns merge
        RecoveredIncidence two =
            incidence_from_blocks(blocks(d, 1, 2), blocks(d, 1, 3));
        CHECK(two.quotient);
        CHECK(two.classes ==
              (std::vector<std::vector<std::size_t>>{{0}, {1, 2}}));
        CHECK(two.matrix ==
              IntMatrix::from_rows({{10, 2}, {1, 11}, {1, 11}, {1, 11}}));

        // one level later every vertex fed by the pair spells the same word
        RecoveredIncidence three =
            incidence_from_blocks(blocks(d, 1, 3), blocks(d, 1, 4));
        CHECK(three.quotient);
        CHECK(three.classes ==
              (std::vector<std::vector<std::size_t>>{{0}, {1, 2, 3}}));
        CHECK(three.matrix ==
              IntMatrix::from_rows(
                  {{29, 3}, {1, 31}, {1, 31}, {1, 31}, {1, 31}}));

        // rebasing above the merge hands every tower a fresh symbol run
        RecoveredIncidence rebased =
            incidence_from_blocks(blocks(d, 2, 2), blocks(d, 2, 3));
        CHECK(!rebased.quotient);
        CHECK(rebased.matrix == d.incidence(2));
    }

    SUBCASE("single vertex recovers the copy count") {
        Diagram d = odometer(2, 4);
        RecoveredIncidence rec =
            incidence_from_blocks(blocks(d, 1, 2), blocks(d, 1, 3));
        CHECK(!rec.quotient);
        CHECK(rec.matrix == IntMatrix::from_rows({{2}}));
    }

    SUBCASE("identical towers quotient onto merged columns") {
        Diagram d = from_json(
            R"({"generator":"explicit","matrices":[[[1],[1]],)"
            R"([[1,1],[1,1]],[[1,1],[2,0]]]})");
        BlockFamily two = blocks(d, 1, 2);
        CHECK(two.words[0] == two.words[1]);
        RecoveredIncidence rec =
            incidence_from_blocks(two, blocks(d, 1, 3));
        CHECK(rec.quotient);
        CHECK(rec.classes ==
              (std::vector<std::vector<std::size_t>>{{0, 1}}));
        CHECK(rec.matrix == IntMatrix::from_rows({{2}, {2}}));
    }

    SUBCASE("families from different constructions are refused") {
        Diagram d = growing_rank(4);
        CHECK(kind_of([&] {
                  incidence_from_blocks(blocks(d, 1, 1), blocks(d, 1, 3));
              }) == ErrorKind::invalid_spec);
        CHECK(kind_of([&] {
                  incidence_from_blocks(blocks(d, 2, 2), blocks(d, 1, 3));
              }) == ErrorKind::invalid_spec);
        BlockFamily bad = blocks(d, 1, 3);
        bad.words[0][0] += 1;
        CHECK(kind_of([&] {
                  incidence_from_blocks(blocks(d, 1, 2), bad);
              }) == ErrorKind::invalid_spec);
    }
}

TEST_CASE("orbit coding through the path alphabet") {
    SUBCASE("forward coding of a minimal path spells the tower word") {
        Diagram d = growing_rank(3);
        BlockFamily fam = blocks(d, 1, 3);
        for (std::size_t v = 0; v < 4; ++v) {
            std::size_t h = fam.words[v].size();
            CHECK(code_forward(d, 1, min_path(d, 3, v), h) == fam.words[v]);
        }
    }

    SUBCASE("forward window cannot leave the tower") {
        Diagram d = growing_rank(3);
        try {
            code_forward(d, 1, min_path(d, 3, 0), 97);
            FAIL("expected a range error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::range);
            CHECK(std::string(e.what()).find("96") != std::string::npos);
        }
    }

    SUBCASE("doubling odometer window alternates") {
        Diagram d = odometer(2, 5);
        FinitePath start = path_from_rank(d, 5, 0, Int(3));
        CHECK(code_orbit(d, 1, start, 3) ==
              (std::vector<std::size_t>{0, 1, 0, 1, 0, 1, 0}));
        // a short path is extended along minimal edges before coding
        FinitePath low = path_from_rank(d, 2, 0, Int(3));
        CHECK(code_orbit(d, 1, low, 3) ==
              (std::vector<std::size_t>{0, 1, 0, 1, 0, 1, 0}));
        try {
            code_orbit(d, 1, low, 4);
            FAIL("expected a range error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::range);
            CHECK(std::string(e.what()).find("3") != std::string::npos);
        }
    }

    SUBCASE("window matches a brute-force orbit simulation") {
        Diagram d = growing_rank(3);
        std::vector<FinitePath> tower = enumerate_tower(d, 3, 1);
        std::size_t center = 40;
        std::size_t radius = 6;
        std::vector<std::size_t> expect;
        for (std::size_t i = center - radius; i <= center + radius; ++i)
            expect.push_back(path_symbol(d, 1, tower[i]));
        CHECK(code_orbit(d, 1, tower[center], radius) == expect);
    }
}

TEST_CASE("extreme path counts at the materialized depth") {
    SUBCASE("growing rank is proper: bottom and top diagonals") {
        Diagram d = growing_rank(8);
        ExtremeCount c = count_extremes(d);
        CHECK(c.minimal == 1);
        CHECK(c.maximal == 1);
        CHECK(c.stable);
        CHECK(c.rollover == (std::vector<std::size_t>{0}));
        for (std::size_t v = 0; v < d.num_vertices(8); ++v) {
            FinitePath lo = min_path(d, 8, v);
            FinitePath hi = max_path(d, 8, v);
            for (std::size_t j = 0; j + 1 < 8; ++j) {
                CHECK(lo.vertices[j] == 0);
                CHECK(hi.vertices[j] == j + 1);
            }
        }
    }

    SUBCASE("pascal keeps every diagonal extreme") {
        ExtremeCount c = count_extremes(pascal(6));
        CHECK(c.minimal == 2);
        CHECK(c.maximal == 2);
        CHECK(!c.stable);
        CHECK(c.rollover.empty());
    }

    SUBCASE("triangular pair has one minimal and two maximal paths") {
        ExtremeCount c = count_extremes(triangular(6));
        CHECK(c.minimal == 1);
        CHECK(c.maximal == 2);
        CHECK(c.stable);
        CHECK(c.rollover.empty());
    }
}

TEST_CASE("stage windows of a block seed") {
    ToeplitzBuild b = build_toeplitz(alternating_seed(4));
    CHECK(b.boundaries_advance);

    std::vector<int> w3 = stage_window(b, 3, 3);
    std::vector<int> w4 = stage_window(b, 4, 3);
    CHECK(w3 == w4);
    CHECK(w3.size() == 7);

    std::vector<int> wide = stage_window(b, 4, 15);
    for (long long i = -15; i <= 15; ++i)
        CHECK(wide[std::size_t(i + 15)] == window_symbol(b, i));

    CHECK(kind_of([&] { stage_window(b, 2, 4); }) == ErrorKind::range);
    CHECK(kind_of([&] { stage_window(b, 9, 1); }) == ErrorKind::range);

    ToeplitzSeed constant;
    constant.alphabet = {"0"};
    constant.block = {0, -1, 0};
    constant.copy_list = {2, 2, 2};
    constant.fills = {{{1, 0}}, {{4, 0}}, {{10, 0}}};
    CHECK(!build_toeplitz(constant).boundaries_advance);
}
