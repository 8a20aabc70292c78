#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bratteli/expr.hpp"
#include "bratteli/matrix.hpp"
#include "bratteli/rational.hpp"

namespace bratteli {

struct ToeplitzSeed;

// One vertex subset per level: sets[n-1] lives on V_n, for 1 <= n <= depth.
using LevelSets = std::vector<std::vector<std::size_t>>;

enum class Generator {
    explicit_matrices,  // incidence matrices listed level by level
    stationary,         // one square matrix repeated at every level
    entries,            // square grid of closed-form entry rules in n
    pascal,             // level n has vertices 0..n, bidiagonal unit incidence
    countable,          // growing rank with diagonal rule a_n
    ers_toeplitz,       // extracted from a Toeplitz block seed
};

const char* generator_name(Generator g);

// Edge orders: (level, vertex) -> sources of the vertex's incoming edges in
// reading order.  Levels are the target level (1..depth).
using OrderMap =
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>;

struct DiagramSpec {
    Generator generator = Generator::explicit_matrices;
    std::size_t depth = 0;
    std::optional<IntVec> root_edges;

    std::vector<IntMatrix> matrices;                  // explicit_matrices
    IntMatrix matrix;                                 // stationary
    std::vector<std::vector<EntryExpr>> entry_rules;  // entries
    EntryExpr countable_rule;                         // countable: a_n
    std::shared_ptr<const ToeplitzSeed> seed;         // ers_toeplitz
    OrderMap order;
};

DiagramSpec parse_spec(const std::string& json_text);
DiagramSpec load_spec(const std::string& path);
std::string spec_to_json(const DiagramSpec& spec);

// Finite-depth diagram with levels 0..depth, a single root vertex, incidence
// matrix n mapping level n to level n+1 (the level-0 matrix is the root edge
// column), exact vertex heights, and row-stochastic transition matrices.
class Diagram {
public:
    explicit Diagram(std::vector<IntMatrix> incidence,
                     std::shared_ptr<const DiagramSpec> spec = nullptr,
                     OrderMap order = {});

    std::size_t depth() const { return incidence_.size(); }
    std::size_t num_vertices(std::size_t level) const;

    // F~_n, shape |V_{n+1}| x |V_n|, for 0 <= n < depth.
    const IntMatrix& incidence(std::size_t n) const;

    IntVec root_edges() const;

    // h^(n), for 1 <= n <= depth: h^(1) = root edges, h^(n+1) = F~_n h^(n).
    const IntVec& heights(std::size_t n) const;

    // F_n with f_vw = f~_vw h_w^(n) / h_v^(n+1), for 1 <= n <= depth-1;
    // rows sum to exactly 1.
    const RatMatrix& stochastic(std::size_t n) const;

    // Ordered sources of the incoming edges of `vertex` in V_level, for
    // 1 <= level <= depth; default order is ascending by source.
    std::vector<std::size_t> edge_sources(std::size_t level,
                                          std::size_t vertex) const;

    // The generating rule set, when this diagram came from one (telescoped
    // diagrams drop it).
    const DiagramSpec* spec() const { return spec_.get(); }

private:
    std::vector<IntMatrix> incidence_;
    std::vector<IntVec> heights_;        // heights_[n-1] = h^(n)
    std::vector<RatMatrix> stochastic_;  // stochastic_[n-1] = F_n
    std::shared_ptr<const DiagramSpec> spec_;
    OrderMap order_;
};

Diagram materialize(const DiagramSpec& spec);

// New diagram whose level k is old level levels[k]; levels must be strictly
// increasing and start at 0.  Composite incidence preserves heights at the
// kept levels.
Diagram telescope(const Diagram& d, const std::vector<std::size_t>& levels);

struct ErsReport {
    bool equal_row_sums;  // every level >= 1 has a constant row sum
    // Per incidence level 0..depth-1: the common row sum when constant.
    std::vector<std::optional<Int>> row_sums;
};

ErsReport ers_check(const Diagram& d);

}  // namespace bratteli
