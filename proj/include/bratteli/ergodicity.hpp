#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/series.hpp"
#include "bratteli/simplex.hpp"

namespace bratteli {

enum class Verdict { certified, undetermined };

const char* verdict_name(Verdict v);

// One consumed tolerance: after `steps` extension steps past the base the
// exact contraction gap dropped to `bound`.
struct ContractionStep {
    std::size_t steps;  // m_k
    Rat bound;          // b_k, exact
};

// Certificate of the cumulative fixed-base contraction search.  The base is
// advanced past levels whose one-step gap is exactly zero (collapsed), then
// the running product G_(base+m, base) is extended one level at a time and
// its exact gap is matched against the tolerance schedule.
struct UniqueSearchResult {
    Verdict verdict;  // certified iff the whole schedule was consumed
    std::size_t base;
    std::vector<std::size_t> collapsed;
    std::vector<Rat> schedule;
    std::vector<ContractionStep> steps;  // one per consumed tolerance
    Rat final_gap;                       // gap at the last computed extension
    std::size_t final_steps;             // that extension count
    std::size_t max_steps;
    // 0, base, then base+m_k+1 per step (deduplicated): telescoping to these
    // levels reproduces every bound as the gap of a cumulative product of the
    // telescoped transition matrices.
    std::vector<std::size_t> telescope_levels;
    std::string note;
};

std::vector<Rat> halving_schedule(std::size_t count);

UniqueSearchResult unique_ergodicity_search(const Diagram& d, std::size_t base,
                                            std::vector<Rat> schedule,
                                            std::size_t max_steps);

// Re-derives every certificate bound through the telescoped diagram and
// checks monotonicity and the schedule inequalities, all exactly.
struct ReplayCheck {
    bool valid;
    std::vector<Rat> bounds;
    std::string detail;
};

ReplayCheck replay_unique_certificate(const Diagram& d,
                                      const UniqueSearchResult& r);

// Divergence test for the series of minimum transition-matrix entries; a
// certified divergence proves the candidate polytopes shrink to one point.
struct DivergenceReport {
    Verdict verdict;     // certified => series provably diverges
    std::string method;  // "closed-form" | "constant-floor" | "window"
    std::vector<Rat> terms;  // min entry of F_n per level
    SeriesAssessment series;
    Rat floor;  // positive constant lower bound when method is constant-floor
    std::string note;
};

DivergenceReport min_entry_divergence(const Diagram& d, std::size_t window);

// Fixed-partition measure-count test.  `blocks` lists disjoint vertex index
// sets applied at every level; remaining vertices form the free remainder.
struct PartitionCriteria {
    std::vector<std::vector<std::size_t>> blocks;
    Rat c = Rat(1, 4);   // remainder rows may put at most 1-c into one block
    Rat c1 = Rat(1, 4);  // min/max regularity of each block's escape mass
    std::size_t window = 6;
};

enum class CondStatus { exact, evidence, vacuous, failed };

const char* cond_status_name(CondStatus s);

struct ConditionReport {
    CondStatus status = CondStatus::vacuous;
    std::vector<Rat> sequence;  // per-level scalar summary
    std::string note;
};

struct PartitionReport {
    bool established;
    std::size_t block_count;
    ConditionReport shape;  // blocks nonempty, disjoint, constant size
    std::vector<SeriesAssessment> escape;      // per block: summable deficiency
    std::vector<DecayAssessment> contraction;  // per block: row spreads decay
    // Raw per-level values behind the two vectors above (levels 1..depth-1).
    std::vector<std::vector<Rat>> escape_terms;
    std::vector<std::vector<Rat>> contraction_seq;
    ConditionReport volumes;     // remainder simplex volumes decay to zero
    ConditionReport balance;     // remainder-to-block mass at most 1-c
    ConditionReport regularity;  // per block: min escape >= c1 * max escape
};

PartitionReport check_partition_criteria(const Diagram& d,
                                         const PartitionCriteria& opt);

// The same vertex subset at every level of the diagram.
LevelSets constant_level_sets(const Diagram& d, std::vector<std::size_t> block);

// Worst one-step mass escaping the per-level sets, per level 1..depth-1.
std::vector<Rat> escape_terms_of(const Diagram& d, const LevelSets& sets);

// Closed form of that escape mass when the sets settle into a recognizable
// pattern (eventually constant, or the growing-rank top pair sliding with
// the level).
std::optional<SymbolicTerm> escape_symbolic(const Diagram& d,
                                            const LevelSets& sets);

// Unique ergodicity of the vertex subdiagram spanned by block j of the
// partition (one LevelSets per block, membership may move with the level),
// via divergence of the in-block minimum entries; reports the exact spread
// of the restricted products against the certified bound.
struct SubdiagramErgodicity {
    Verdict verdict;
    bool prerequisites;  // blocks of constant size with summable escape
    bool singleton;      // one-vertex blocks contract trivially
    std::vector<Rat> terms;  // m_{n}: min in-block entry of F_n per level
    SeriesAssessment series;
    Rat floor;  // constant lower bound when one applies
    std::vector<Rat> block_spread;  // max column spread of restricted products
    std::vector<Rat> spread_bound;  // spread_1 * prod(1 - 2 m_s), clamped at 0
    std::string note;
};

SubdiagramErgodicity subdiagram_unique_ergodicity(
    const Diagram& d, const std::vector<LevelSets>& blocks, std::size_t j,
    std::size_t window);

// One candidate chain: a block per level (level 1..depth), judged by its
// escape-mass series and kept only when that series is summable.
struct Chain {
    LevelSets blocks;
    std::vector<Rat> escape_terms;  // worst out-of-chain mass per level
    SeriesAssessment escape;
    bool kept;
};

// Search for a family of vertex chains supporting distinct measures: cluster
// each level's rows at the absolute scale 2/gap_ratio, link blocks downward
// by dominant mass, drop chains whose escape mass is not summable, then
// check that kept blocks contract, that remainder rows asymptotically empty
// into the kept blocks, and that no single block absorbs them entirely.
struct ChainSearchResult {
    bool admissible;
    // Raw clustering of V_n for every level 1..depth (level 1 single block).
    std::vector<std::vector<std::vector<std::size_t>>> level_blocks;
    std::vector<Chain> chains;
    // Vertices outside every kept chain, per level 1..depth.
    std::vector<std::vector<std::size_t>> remainder;
    DecayAssessment block_contraction;    // in-block row spread, kept blocks
    DecayAssessment remainder_retention;  // remainder mass staying outside
    Rat c_hat;  // 1 - worst remainder-into-one-block mass (must stay > 0)
    Rat row_distance_floor;  // min distance between rows of distinct blocks
    std::string violated;    // empty when admissible
};

ChainSearchResult chain_partition_search(const Diagram& d,
                                         const Rat& gap_ratio,
                                         std::size_t window);

// Dominant-mass parent of every block: out[n-1][j] is the index of the
// level-n block receiving the most transition mass from block j of level
// n+1, ties to the smallest index.  level_blocks[n-1] lists the blocks of
// level n, for every level 1..depth.
std::vector<std::vector<std::size_t>> dominant_parents(
    const Diagram& d,
    const std::vector<std::vector<std::vector<std::size_t>>>& level_blocks);

// Support profile of a verified trace against a candidate support block:
// worst in-block mass (delta-hat) and the off-block decay sequence.
struct SupportReport {
    Rat delta_hat;
    std::vector<Rat> in_support;   // min in-block mass per level
    std::vector<Rat> off_support;  // max off-block mass per level
    DecayAssessment off_decay;
};

SupportReport support_diagnostics(const Diagram& d,
                                  const std::vector<RatVec>& trace,
                                  const std::vector<std::size_t>& block,
                                  std::size_t window);

}  // namespace bratteli
