#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bratteli/expr.hpp"
#include "bratteli/matrix.hpp"

namespace bratteli {

// Block seed for a Toeplitz sequence: a starting block with holes, a copy
// count per stage, and per-stage hole fills.  Stage n+1 concatenates
// copies(n+1) copies of stage n and then fills some (never all) of the holes.
struct ToeplitzSeed {
    std::vector<std::string> alphabet;
    std::vector<int> block;  // stage-0 block; alphabet index, -1 = hole
    // copies(n) for stage n >= 1, either an explicit list or a closed form
    std::vector<unsigned long> copy_list;
    EntryExpr copy_rule;
    bool has_copy_rule = false;
    // fills[s] applies when building stage s+1: (position, alphabet index);
    // positions index into the concatenated stage-(s+1) block and must be
    // holes at that point.
    std::vector<std::vector<std::pair<std::size_t, int>>> fills;
};

struct ToeplitzStage {
    std::vector<int> block;  // A_n, -1 = hole
    std::size_t period;      // p_n = |A_n|
    std::size_t lead;        // l_n: first hole position (hole-free head length)
    std::size_t margin;      // k_n = p_n - last hole position (hole-free tail)
};

// All stages the seed defines, plus the central window of the limit sequence
// that the final stage fully determines: positions window_lo..window_hi with
// window_lo = -(margin-1), window_hi = lead-1.
struct ToeplitzBuild {
    std::vector<ToeplitzStage> stages;
    long long window_lo = 0, window_hi = -1;
    std::vector<int> window;
    // Whether the hole-free head and tail both grew strictly over every two
    // consecutive stages -- the cadence a seed needs for its limit sequence
    // to determine every position.  Reported, not enforced: a finite build
    // cannot certify the limit.
    bool boundaries_advance = false;
};

ToeplitzBuild build_toeplitz(const ToeplitzSeed& seed);

// Symbol of the limit sequence at an absolute position inside the determined
// window; throws Error(range) outside it.
int window_symbol(const ToeplitzBuild& b, long long pos);

// Central window -radius..radius of the periodic stage-`stage` sequence;
// every returned position is already filled (and final), which bounds the
// radius by the stage's hole-free head and tail.
std::vector<int> stage_window(const ToeplitzBuild& b, std::size_t stage,
                              std::size_t radius);

// Distinct fully-determined aligned blocks per level, and the diagram they
// induce: level n vertices are the stage-n blocks occurring inside level n+1
// blocks, edges count constituent occurrences.
struct ToeplitzFamilies {
    ToeplitzBuild build;
    // families[n] for 1 <= n <= depth, content-lex sorted; families[0] empty.
    std::vector<std::vector<std::vector<int>>> families;
    // incidence[0] is the root column (every level-1 block has period-1
    // height); incidence[n] maps level n families to level n+1 families.
    std::vector<IntMatrix> incidence;
};

ToeplitzFamilies toeplitz_families(const ToeplitzSeed& seed, std::size_t depth);

std::string block_label(const ToeplitzSeed& seed, const std::vector<int>& block);

}  // namespace bratteli
