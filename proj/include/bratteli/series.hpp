#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/poly.hpp"

namespace bratteli {

// How a level-indexed nonnegative quantity was judged:
//   exact_zero  every computed value is exactly zero
//   certified   a closed-form term proves the claim outright
//   evidence    a trailing window behaves geometrically (ratio <= 9/10)
//   failed      none of the above held
enum class SeqStatus { exact_zero, certified, evidence, failed };

const char* seq_status_name(SeqStatus s);

// Decay of a nonnegative sequence toward zero, judged on a trailing window.
struct DecayAssessment {
    SeqStatus status;  // exact_zero | evidence | failed
    Rat last;
    Rat worst_ratio;  // max consecutive ratio over the window (when defined)
    std::string note;
};

DecayAssessment assess_decay(const std::vector<Rat>& seq, std::size_t window);

// Closed-form term valid for levels n >= valid_from.
struct SymbolicTerm {
    PolyRatio ratio;
    Int valid_from;
};

// Convergence verdict for a nonnegative series with optional closed form.
// When a closed form is given, every computed term at a level >= valid_from
// must match it exactly, and the verdict comes from the exact degree-gap
// classification; otherwise the trailing window supplies evidence only.
struct SeriesAssessment {
    SeqStatus status;
    bool convergent;  // meaning of the certificate or evidence
    std::optional<SeriesCertificate> certificate;
    std::string term;  // printable closed form when present
    Rat partial_sum;
    Rat last;
    std::string note;
};

SeriesAssessment assess_series(const std::vector<std::size_t>& levels,
                               const std::vector<Rat>& terms, std::size_t window,
                               const std::optional<SymbolicTerm>& symbolic);

// Closed-form minimum entry of the transition matrix at level n, for diagrams
// generated by polynomial level rules with equal row sums.
std::optional<SymbolicTerm> symbolic_min_entry(const Diagram& d);

// Closed-form worst escape mass from a fixed vertex block: the maximum over
// v in the block of 1 minus the in-block row mass of F_n.
std::optional<SymbolicTerm> symbolic_block_deficiency(
    const Diagram& d, const std::vector<std::size_t>& block);

// Closed-form minimum of the in-block entries of F_n over a fixed block.
std::optional<SymbolicTerm> symbolic_block_min_entry(
    const Diagram& d, const std::vector<std::size_t>& block);

// Constant lower bound on every transition entry: for a repeated strictly
// positive incidence matrix with maximum row sum R, every entry of F_n is at
// least 1/R^2 from level 2 on.
std::optional<Rat> stationary_entry_floor(const Diagram& d);

}  // namespace bratteli
