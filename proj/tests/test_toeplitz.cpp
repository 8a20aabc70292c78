#include "bratteli/toeplitz.hpp"

#include "bratteli/diagram.hpp"
#include "doctest.h"

using namespace bratteli;

namespace {

// 0 _ 1 seed, doubling stages; odd stages set the first hole to 1, even
// stages set the last hole to 0.
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

}  // namespace

TEST_CASE("toeplitz stages and window") {
    ToeplitzBuild b = build_toeplitz(alternating_seed(4));
    REQUIRE(b.stages.size() == 5);
    CHECK(b.stages[0].period == 3);
    CHECK(b.stages[4].period == 48);
    // hole-free head and tail lengths per stage
    std::vector<std::size_t> lead{1, 4, 4, 16, 16};
    std::vector<std::size_t> margin{2, 2, 8, 8, 32};
    for (std::size_t n = 0; n < 5; ++n) {
        CHECK(b.stages[n].lead == lead[n]);
        CHECK(b.stages[n].margin == margin[n]);
        // head and tail lengths never shrink from stage to stage
        if (n) {
            CHECK(b.stages[n].lead >= b.stages[n - 1].lead);
            CHECK(b.stages[n].margin >= b.stages[n - 1].margin);
        }
    }
    CHECK(b.window_lo == -31);
    CHECK(b.window_hi == 15);
    std::vector<int> head{0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0};
    for (long long i = 0; i <= 15; ++i) CHECK(window_symbol(b, i) == head[std::size_t(i)]);
    CHECK(window_symbol(b, -1) == 1);
    CHECK(window_symbol(b, -31) == 1);
    CHECK_THROWS_AS(window_symbol(b, -32), Error);
    CHECK_THROWS_AS(window_symbol(b, 16), Error);
}

TEST_CASE("toeplitz families and induced diagram") {
    ToeplitzSeed seed = alternating_seed(4);
    ToeplitzFamilies fam = toeplitz_families(seed, 2);
    REQUIRE(fam.families.size() == 3);
    REQUIRE(fam.families[1].size() == 2);
    REQUIRE(fam.families[2].size() == 2);
    CHECK(block_label(seed, fam.families[1][0]) == "011001");
    CHECK(block_label(seed, fam.families[1][1]) == "011011");
    CHECK(block_label(seed, fam.families[2][0]) == "011001011001");
    CHECK(block_label(seed, fam.families[2][1]) == "011011011001");

    REQUIRE(fam.incidence.size() == 2);
    CHECK(fam.incidence[0] == IntMatrix::from_rows({{6}, {6}}));
    CHECK(fam.incidence[1] == IntMatrix::from_rows({{2, 0}, {1, 1}}));

    // as a diagram: unit heights scale with the periods, stochastic rows are
    // incidence over the copy count
    DiagramSpec spec;
    spec.generator = Generator::ers_toeplitz;
    spec.depth = 2;
    spec.seed = std::make_shared<ToeplitzSeed>(seed);
    Diagram d = materialize(spec);
    CHECK(d.heights(1) == IntVec{6, 6});
    CHECK(d.heights(2) == IntVec{12, 12});
    const RatMatrix& f = d.stochastic(1);
    CHECK(f(0, 0) == 1);
    CHECK(f(1, 0) == Rat(1, 2));
    CHECK(f(1, 1) == Rat(1, 2));
    CHECK(ers_check(d).equal_row_sums);
}

TEST_CASE("single-symbol seed collapses to an odometer") {
    ToeplitzSeed seed;
    seed.alphabet = {"0"};
    seed.block = {0, -1, 0};
    seed.copy_list = {2, 2, 2};
    // always fill the first hole with the only symbol
    seed.fills = {{{1, 0}}, {{4, 0}}, {{10, 0}}};
    ToeplitzFamilies fam = toeplitz_families(seed, 2);
    CHECK(fam.families[1].size() == 1);
    CHECK(fam.families[2].size() == 1);
    CHECK(fam.incidence[1] == IntMatrix::from_rows({{2}}));
}

TEST_CASE("toeplitz seed validation") {
    ToeplitzSeed seed = alternating_seed(2);
    seed.fills[0] = {{0, 1}};  // not a hole
    CHECK_THROWS_AS(build_toeplitz(seed), Error);

    seed = alternating_seed(2);
    seed.fills[1] = {{4, 0}, {10, 0}};  // fills every hole
    CHECK_THROWS_AS(build_toeplitz(seed), Error);

    seed = alternating_seed(2);
    seed.fills[0] = {};  // fills nothing
    CHECK_THROWS_AS(build_toeplitz(seed), Error);

    seed = alternating_seed(2);
    seed.block = {0, 1};  // too short
    CHECK_THROWS_AS(build_toeplitz(seed), Error);

    // depth must stay below the number of defined stages
    CHECK_THROWS_AS(toeplitz_families(alternating_seed(2), 2), Error);
    CHECK_NOTHROW(toeplitz_families(alternating_seed(3), 2));
}
