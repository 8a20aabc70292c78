#include "bratteli/series.hpp"

#include "bratteli/error.hpp"
#include "doctest.h"

using namespace bratteli;

namespace {

Diagram from_json(const std::string& text) { return materialize(parse_spec(text)); }

Diagram symmetric_entries(const std::string& diag, std::size_t depth) {
    return from_json(R"({"generator":"entries","entries":[[")" + diag +
                     R"(",1],[1,")" + diag + R"("]],"depth":)" +
                     std::to_string(depth) + "}");
}

Diagram growing_rank(std::size_t depth) {
    return from_json(R"({"generator":"countable","depth":)" +
                     std::to_string(depth) + "}");
}

std::vector<std::size_t> all_levels(const Diagram& d) {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n + 1 <= d.depth(); ++n) out.push_back(n);
    return out;
}

Rat min_entry(const RatMatrix& f) {
    Rat mn = f(0, 0);
    for (std::size_t v = 0; v < f.rows(); ++v)
        for (std::size_t w = 0; w < f.cols(); ++w)
            if (f(v, w) < mn) mn = f(v, w);
    return mn;
}

// Worst escape mass from a fixed block along one level step.
Rat block_deficiency(const RatMatrix& f, const std::vector<std::size_t>& block) {
    Rat worst(0);
    for (std::size_t v : block) {
        Rat in(0);
        for (std::size_t w : block) in += f(v, w);
        Rat esc = Rat(1) - in;
        if (worst < esc) worst = esc;
    }
    return worst;
}

Rat block_min(const RatMatrix& f, const std::vector<std::size_t>& block) {
    Rat mn = f(block.front(), block.front());
    for (std::size_t v : block)
        for (std::size_t w : block)
            if (f(v, w) < mn) mn = f(v, w);
    return mn;
}

Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("decay assessment: degenerate inputs") {
    DecayAssessment a = assess_decay({}, 6);
    CHECK(a.status == SeqStatus::failed);

    a = assess_decay({Rat(0), Rat(0), Rat(0)}, 6);
    CHECK(a.status == SeqStatus::exact_zero);
    CHECK(a.last == 0);

    // A single value gives no consecutive ratio to inspect.
    a = assess_decay({Rat(1)}, 6);
    CHECK(a.status == SeqStatus::failed);
}

TEST_CASE("decay assessment: trailing-window ratios") {
    std::vector<Rat> halving{Rat(1), frac(1, 2), frac(1, 4), frac(1, 8)};
    DecayAssessment a = assess_decay(halving, 3);
    CHECK(a.status == SeqStatus::evidence);
    CHECK(a.worst_ratio == frac(1, 2));
    CHECK(a.last == frac(1, 8));

    // Ratio exactly 9/10 still counts as evidence.
    std::vector<Rat> edge{Rat(100), Rat(90), Rat(81)};
    a = assess_decay(edge, 3);
    CHECK(a.status == SeqStatus::evidence);
    CHECK(a.worst_ratio == frac(9, 10));

    // One slow step inside the window spoils the bound.
    std::vector<Rat> slow{Rat(1), frac(1, 2), frac(49, 100)};
    a = assess_decay(slow, 3);
    CHECK(a.status == SeqStatus::failed);
    CHECK(a.worst_ratio == frac(49, 50));

    // ... but outside the window it is ignored.
    a = assess_decay({Rat(1), Rat(2), Rat(1), frac(1, 2)}, 2);
    CHECK(a.status == SeqStatus::evidence);
}

TEST_CASE("decay assessment: zeros inside the window") {
    // Dropping to exact zero is the strongest possible decay.
    DecayAssessment a = assess_decay({Rat(1), frac(1, 2), Rat(0), Rat(0)}, 4);
    CHECK(a.status == SeqStatus::evidence);
    CHECK(a.worst_ratio == frac(1, 2));

    // Rising from zero to positive admits no geometric bound.
    a = assess_decay({Rat(1), Rat(0), frac(1, 4)}, 3);
    CHECK(a.status == SeqStatus::failed);
}

TEST_CASE("series assessment: input validation") {
    CHECK_THROWS_AS(assess_series({1, 2}, {Rat(1)}, 6, std::nullopt), Error);
    CHECK_THROWS_AS(assess_series({1}, {Rat(-1)}, 6, std::nullopt), Error);
}

TEST_CASE("series assessment: window-only paths") {
    SeriesAssessment a = assess_series({1, 2, 3}, {Rat(0), Rat(0), Rat(0)}, 6,
                                       std::nullopt);
    CHECK(a.status == SeqStatus::exact_zero);
    CHECK(a.convergent);
    CHECK(a.partial_sum == 0);

    std::vector<Rat> geo{frac(1, 2), frac(1, 4), frac(1, 8), frac(1, 16)};
    a = assess_series({1, 2, 3, 4}, geo, 4, std::nullopt);
    CHECK(a.status == SeqStatus::evidence);
    CHECK(a.convergent);
    CHECK(a.partial_sum == frac(15, 16));
    CHECK(a.last == frac(1, 16));
    CHECK_FALSE(a.certificate.has_value());

    std::vector<Rat> flat{Rat(1), Rat(1), Rat(1)};
    a = assess_series({1, 2, 3}, flat, 3, std::nullopt);
    CHECK(a.status == SeqStatus::failed);
    CHECK_FALSE(a.convergent);
}

TEST_CASE("series assessment: closed forms decide convergence exactly") {
    // 1/(n+1): degree gap 1, divergent, no matter how fast the window looks.
    Poly one = Poly::constant(1);
    Poly np1 = Poly::var() + one;
    std::vector<std::size_t> levels;
    std::vector<Rat> terms;
    for (std::size_t n = 1; n <= 12; ++n) {
        levels.push_back(n);
        terms.push_back(frac(1, long(n) + 1));
    }
    SeriesAssessment a = assess_series(
        levels, terms, 6, SymbolicTerm{PolyRatio{one, np1}, Int(1)});
    CHECK(a.status == SeqStatus::certified);
    CHECK_FALSE(a.convergent);
    REQUIRE(a.certificate.has_value());
    CHECK(a.certificate->cls == SeriesClass::divergent);
    CHECK(a.certificate->num_degree == 0);
    CHECK(a.certificate->den_degree == 1);
    CHECK(a.term == "(1)/(n+1)");

    // 1/(n^2+1): degree gap 2, convergent.
    Poly nsq1 = Poly::var() * Poly::var() + one;
    terms.clear();
    for (std::size_t n = 1; n <= 12; ++n)
        terms.push_back(frac(1, long(n) * long(n) + 1));
    a = assess_series(levels, terms, 6,
                      SymbolicTerm{PolyRatio{one, nsq1}, Int(1)});
    CHECK(a.status == SeqStatus::certified);
    CHECK(a.convergent);
    CHECK(a.certificate->cls == SeriesClass::convergent);

    // The closed form must reproduce every in-range term exactly.
    terms[7] += frac(1, 1000000);
    a = assess_series(levels, terms, 6,
                      SymbolicTerm{PolyRatio{one, nsq1}, Int(1)});
    CHECK(a.status == SeqStatus::failed);
    CHECK(a.note.find("level 8") != std::string::npos);

    // Terms below valid_from are exempt from the match requirement.
    terms[7] -= frac(1, 1000000);
    terms[0] = Rat(7);
    a = assess_series(levels, terms, 6,
                      SymbolicTerm{PolyRatio{one, nsq1}, Int(2)});
    CHECK(a.status == SeqStatus::certified);
    CHECK(a.convergent);
}

TEST_CASE("minimum-entry closed form: symmetric linear family") {
    Diagram d = symmetric_entries("n", 12);
    auto hook = symbolic_min_entry(d);
    REQUIRE(hook.has_value());
    std::vector<std::size_t> levels = all_levels(d);
    std::vector<Rat> terms;
    for (std::size_t n : levels) {
        terms.push_back(min_entry(d.stochastic(n)));
        CHECK(terms.back() == frac(1, long(n) + 1));
    }
    SeriesAssessment a = assess_series(levels, terms, 6, hook);
    CHECK(a.status == SeqStatus::certified);
    CHECK_FALSE(a.convergent);
}

TEST_CASE("minimum-entry closed form: symmetric quadratic family") {
    Diagram d = symmetric_entries("n^2", 12);
    auto hook = symbolic_min_entry(d);
    REQUIRE(hook.has_value());
    std::vector<std::size_t> levels = all_levels(d);
    std::vector<Rat> terms;
    for (std::size_t n : levels) {
        terms.push_back(min_entry(d.stochastic(n)));
        CHECK(terms.back() == frac(1, long(n) * long(n) + 1));
    }
    SeriesAssessment a = assess_series(levels, terms, 6, hook);
    CHECK(a.status == SeqStatus::certified);
    CHECK(a.convergent);
}

TEST_CASE("minimum-entry closed form: growing-rank family") {
    Diagram d = growing_rank(10);
    auto hook = symbolic_min_entry(d);
    REQUIRE(hook.has_value());
    std::vector<std::size_t> levels = all_levels(d);
    std::vector<Rat> terms;
    for (std::size_t n : levels) {
        terms.push_back(min_entry(d.stochastic(n)));
        long an = long(n) * long(n) * long(n) + 2;
        CHECK(terms.back() == frac(1, an + long(n)));
    }
    SeriesAssessment a = assess_series(levels, terms, 6, hook);
    CHECK(a.status == SeqStatus::certified);
    CHECK(a.convergent);  // degree gap 3
}

TEST_CASE("block-deficiency closed forms") {
    Diagram lin = symmetric_entries("n", 12);
    std::vector<std::size_t> levels = all_levels(lin);
    {
        auto hook = symbolic_block_deficiency(lin, {0});
        REQUIRE(hook.has_value());
        std::vector<Rat> terms;
        for (std::size_t n : levels)
            terms.push_back(block_deficiency(lin.stochastic(n), {0}));
        SeriesAssessment a = assess_series(levels, terms, 6, hook);
        CHECK(a.status == SeqStatus::certified);
        CHECK_FALSE(a.convergent);  // 1/(n+1)
    }
    {
        Diagram quad = symmetric_entries("n^2", 12);
        auto hook = symbolic_block_deficiency(quad, {0});
        REQUIRE(hook.has_value());
        std::vector<Rat> terms;
        for (std::size_t n : levels)
            terms.push_back(block_deficiency(quad.stochastic(n), {0}));
        SeriesAssessment a = assess_series(levels, terms, 6, hook);
        CHECK(a.status == SeqStatus::certified);
        CHECK(a.convergent);  // 1/(n^2+1)
    }
    // Out-of-range or repeated vertices give no closed form.
    CHECK_FALSE(symbolic_block_deficiency(lin, {0, 2}).has_value());
    CHECK_FALSE(symbolic_block_deficiency(lin, {0, 0}).has_value());
    CHECK_FALSE(symbolic_block_deficiency(lin, {}).has_value());
}

TEST_CASE("block closed forms: growing-rank family") {
    Diagram d = growing_rank(10);
    std::vector<std::size_t> levels = all_levels(d);
    auto an = [](std::size_t n) { return long(n) * long(n) * long(n) + 2; };

    // Escape from the fixed first vertex is n/(a_n+n).
    {
        auto hook = symbolic_block_deficiency(d, {0});
        REQUIRE(hook.has_value());
        std::vector<Rat> terms;
        for (std::size_t n : levels) {
            terms.push_back(block_deficiency(d.stochastic(n), {0}));
            CHECK(terms.back() == frac(long(n), an(n) + long(n)));
        }
        SeriesAssessment a = assess_series(levels, terms, 6, hook);
        CHECK(a.status == SeqStatus::certified);
        CHECK(a.convergent);  // degree gap 2
    }
    // Escape from the fixed pair {0,1} is (n-1)/(a_n+n) from level 2 on.
    {
        auto hook = symbolic_block_deficiency(d, {0, 1});
        REQUIRE(hook.has_value());
        CHECK(hook->valid_from >= Int(2));  // conservative sign-stability bound
        std::vector<Rat> terms;
        for (std::size_t n : levels) {
            terms.push_back(block_deficiency(d.stochastic(n), {0, 1}));
            CHECK(terms.back() == frac(long(n) - 1, an(n) + long(n)));
        }
        SeriesAssessment a = assess_series(levels, terms, 6, hook);
        CHECK(a.status == SeqStatus::certified);
        CHECK(a.convergent);
    }
    // In-block minimum entry: the diagonal weight alone for a singleton,
    // a unit entry once the block has two vertices.
    {
        auto hook = symbolic_block_min_entry(d, {0});
        REQUIRE(hook.has_value());
        std::vector<Rat> terms;
        for (std::size_t n : levels) {
            terms.push_back(block_min(d.stochastic(n), {0}));
            CHECK(terms.back() == frac(an(n), an(n) + long(n)));
        }
        SeriesAssessment a = assess_series(levels, terms, 6, hook);
        CHECK(a.status == SeqStatus::certified);
        CHECK_FALSE(a.convergent);  // terms approach 1
    }
    {
        auto hook = symbolic_block_min_entry(d, {0, 1});
        REQUIRE(hook.has_value());
        std::vector<Rat> terms;
        for (std::size_t n : levels) {
            terms.push_back(block_min(d.stochastic(n), {0, 1}));
            CHECK(terms.back() == frac(1, an(n) + long(n)));
        }
        SeriesAssessment a = assess_series(levels, terms, 6, hook);
        CHECK(a.status == SeqStatus::certified);
        CHECK(a.convergent);
    }
}

TEST_CASE("block minimum-entry closed form: entry grids") {
    Diagram lin = symmetric_entries("n", 12);
    auto hook = symbolic_block_min_entry(lin, {0, 1});
    REQUIRE(hook.has_value());
    std::vector<std::size_t> levels = all_levels(lin);
    std::vector<Rat> terms;
    for (std::size_t n : levels) {
        terms.push_back(block_min(lin.stochastic(n), {0, 1}));
        CHECK(terms.back() == frac(1, long(n) + 1));
    }
    SeriesAssessment a = assess_series(levels, terms, 6, hook);
    CHECK(a.status == SeqStatus::certified);
    CHECK_FALSE(a.convergent);
}

TEST_CASE("stationary entry floor") {
    Diagram odo = from_json(
        R"({"generator":"stationary","matrix":[[1,1],[1,1]],"depth":8})");
    auto floor = stationary_entry_floor(odo);
    REQUIRE(floor.has_value());
    CHECK(*floor == frac(1, 4));

    // A zero entry defeats the constant bound.
    Diagram tri = from_json(
        R"({"generator":"stationary","matrix":[[3,0],[1,2]],"depth":8})");
    CHECK_FALSE(stationary_entry_floor(tri).has_value());

    // Non-repeating generators are out of scope for this bound.
    CHECK_FALSE(stationary_entry_floor(symmetric_entries("n", 6)).has_value());

    // The bound really does floor every transition entry from level 2 on.
    Diagram mix = from_json(
        R"({"generator":"stationary","matrix":[[2,1],[1,2]],"depth":10})");
    floor = stationary_entry_floor(mix);
    REQUIRE(floor.has_value());
    CHECK(*floor == frac(1, 9));
    for (std::size_t n = 2; n + 1 <= mix.depth(); ++n)
        CHECK(min_entry(mix.stochastic(n)) >= *floor);
}
