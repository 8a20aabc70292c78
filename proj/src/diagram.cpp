#include "bratteli/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bratteli/toeplitz.hpp"
#include "json.hpp"

namespace bratteli {

using nlohmann::json;

const char* generator_name(Generator g) {
    switch (g) {
    case Generator::explicit_matrices: return "explicit";
    case Generator::stationary: return "stationary";
    case Generator::entries: return "entries";
    case Generator::pascal: return "pascal";
    case Generator::countable: return "countable";
    case Generator::ers_toeplitz: return "ers-toeplitz";
    }
    return "?";
}

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw Error(ErrorKind::invalid_spec, msg);
}

Generator generator_from_name(const std::string& s) {
    for (Generator g :
         {Generator::explicit_matrices, Generator::stationary,
          Generator::entries, Generator::pascal, Generator::countable,
          Generator::ers_toeplitz})
        if (s == generator_name(g)) return g;
    bad("unknown generator '" + s + "'");
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text,
                                             std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Int json_to_int(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            bad(where + ": bad integer literal '" + j.get<std::string>() + "'");
        }
    }
    bad(where + ": expected an integer or integer string");
}

std::size_t json_to_size(const json& j, const std::string& where) {
    Int v = json_to_int(j, where);
    if (v < 0 || !v.fits_ulong_p()) bad(where + ": out of range");
    return std::size_t(v.get_ui());
}

IntVec json_to_intvec(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where + ": expected an array");
    IntVec out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(json_to_int(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

IntMatrix json_to_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where + ": expected a non-empty array of rows");
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < j.size(); ++i)
        rows.push_back(json_to_intvec(j[i], where + "[" + std::to_string(i) + "]"));
    return IntMatrix::from_rows(rows);
}

EntryExpr json_to_expr(const json& j, const std::string& where) {
    if (j.is_string()) return EntryExpr::parse(j.get<std::string>());
    return EntryExpr::constant(json_to_int(j, where));
}

OrderMap json_to_order(const json& j) {
    if (!j.is_object()) bad("key 'order': expected an object");
    OrderMap out;
    for (const auto& [key, val] : j.items()) {
        auto colon = key.find(':');
        std::size_t level = 0, vertex = 0;
        bool ok = colon != std::string::npos;
        if (ok) {
            try {
                level = std::stoul(key.substr(0, colon));
                vertex = std::stoul(key.substr(colon + 1));
            } catch (...) {
                ok = false;
            }
        }
        if (!ok) bad("order key '" + key + "': expected 'level:vertex'");
        if (!val.is_array()) bad("order['" + key + "']: expected an array");
        std::vector<std::size_t> srcs;
        for (std::size_t i = 0; i < val.size(); ++i)
            srcs.push_back(json_to_size(val[i], "order['" + key + "']"));
        out[{level, vertex}] = std::move(srcs);
    }
    return out;
}

std::shared_ptr<const ToeplitzSeed> json_to_seed(const json& j) {
    if (!j.is_object()) bad("key 'toeplitz': expected an object");
    auto seed = std::make_shared<ToeplitzSeed>();
    for (const auto& [key, val] : j.items()) {
        if (key != "alphabet" && key != "block" && key != "lambda" &&
            key != "fills")
            bad("toeplitz: unknown key '" + key + "'");
        (void)val;
    }
    if (!j.contains("alphabet") || !j["alphabet"].is_array())
        bad("toeplitz: missing 'alphabet' array");
    for (const auto& s : j["alphabet"]) {
        if (s.is_string())
            seed->alphabet.push_back(s.get<std::string>());
        else
            seed->alphabet.push_back(json_to_int(s, "toeplitz.alphabet").get_str());
    }
    auto symbol_index = [&](const json& s, const std::string& where) -> int {
        std::string name = s.is_string()
                               ? s.get<std::string>()
                               : json_to_int(s, where).get_str();
        auto it = std::find(seed->alphabet.begin(), seed->alphabet.end(), name);
        if (it == seed->alphabet.end())
            bad(where + ": symbol '" + name + "' not in alphabet");
        return int(it - seed->alphabet.begin());
    };
    if (!j.contains("block") || !j["block"].is_array())
        bad("toeplitz: missing 'block' array");
    for (const auto& s : j["block"]) {
        if (s.is_null())
            seed->block.push_back(-1);
        else
            seed->block.push_back(symbol_index(s, "toeplitz.block"));
    }
    if (!j.contains("lambda")) bad("toeplitz: missing 'lambda'");
    const json& lam = j["lambda"];
    if (lam.is_array()) {
        for (std::size_t i = 0; i < lam.size(); ++i) {
            Int v = json_to_int(lam[i], "toeplitz.lambda");
            if (v < 2 || !v.fits_ulong_p()) bad("toeplitz.lambda: each copy count must be >= 2");
            seed->copy_list.push_back(v.get_ui());
        }
    } else {
        seed->copy_rule = json_to_expr(lam, "toeplitz.lambda");
        seed->has_copy_rule = true;
    }
    if (!j.contains("fills") || !j["fills"].is_array())
        bad("toeplitz: missing 'fills' array");
    for (std::size_t s = 0; s < j["fills"].size(); ++s) {
        const json& stage = j["fills"][s];
        std::string where = "toeplitz.fills[" + std::to_string(s) + "]";
        if (!stage.is_array()) bad(where + ": expected an array of [position, symbol]");
        std::vector<std::pair<std::size_t, int>> fs;
        for (const auto& f : stage) {
            if (!f.is_array() || f.size() != 2)
                bad(where + ": expected [position, symbol] pairs");
            fs.emplace_back(json_to_size(f[0], where), symbol_index(f[1], where));
        }
        seed->fills.push_back(std::move(fs));
    }
    return seed;
}

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

DiagramSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte ? e.byte - 1 : 0);
        bad("JSON syntax error at line " + std::to_string(line) + ", column " +
            std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) bad("spec must be a JSON object");
    if (!j.contains("generator") || !j["generator"].is_string())
        bad("spec: missing 'generator' string");

    DiagramSpec spec;
    spec.generator = generator_from_name(j["generator"].get<std::string>());

    static const std::map<Generator, std::vector<std::string>> allowed = {
        {Generator::explicit_matrices, {"matrices", "root_edges", "depth", "order"}},
        {Generator::stationary, {"matrix", "depth", "root_edges", "order"}},
        {Generator::entries, {"entries", "depth", "root_edges", "order"}},
        {Generator::pascal, {"depth", "order"}},
        {Generator::countable, {"depth", "params", "root_edges", "order"}},
        {Generator::ers_toeplitz, {"toeplitz", "depth", "order"}},
    };
    const auto& ok = allowed.at(spec.generator);
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key == "generator") continue;
        if (std::find(ok.begin(), ok.end(), key) == ok.end())
            bad("key '" + key + "' is not valid for generator '" +
                std::string(generator_name(spec.generator)) + "'");
    }

    if (j.contains("depth")) spec.depth = json_to_size(j["depth"], "depth");
    if (j.contains("root_edges"))
        spec.root_edges = json_to_intvec(j["root_edges"], "root_edges");
    if (j.contains("order")) spec.order = json_to_order(j["order"]);

    switch (spec.generator) {
    case Generator::explicit_matrices: {
        if (!j.contains("matrices") || !j["matrices"].is_array())
            bad("spec: missing 'matrices' array");
        for (std::size_t i = 0; i < j["matrices"].size(); ++i)
            spec.matrices.push_back(json_to_matrix(
                j["matrices"][i], "matrices[" + std::to_string(i) + "]"));
        if (spec.matrices.empty() && !spec.root_edges)
            bad("spec: 'matrices' is empty and no 'root_edges' given");
        std::size_t d = spec.matrices.size() + 1;
        if (spec.depth == 0)
            spec.depth = d;
        else if (spec.depth != d)
            bad("spec: 'depth' contradicts the number of matrices");
        break;
    }
    case Generator::stationary:
        if (!j.contains("matrix")) bad("spec: missing 'matrix'");
        spec.matrix = json_to_matrix(j["matrix"], "matrix");
        if (spec.matrix.rows() != spec.matrix.cols())
            bad("spec: stationary 'matrix' must be square");
        if (spec.depth == 0) bad("spec: missing 'depth'");
        break;
    case Generator::entries: {
        if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty())
            bad("spec: missing 'entries' grid");
        const json& rows = j["entries"];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].is_array() || rows[i].size() != rows.size())
                bad("spec: 'entries' must be a square grid");
            std::vector<EntryExpr> row;
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                row.push_back(json_to_expr(rows[i][k], "entries[" + std::to_string(i) +
                                                           "][" + std::to_string(k) + "]"));
            spec.entry_rules.push_back(std::move(row));
        }
        if (spec.depth == 0) bad("spec: missing 'depth'");
        break;
    }
    case Generator::pascal:
        if (spec.depth == 0) bad("spec: missing 'depth'");
        break;
    case Generator::countable:
        if (spec.depth == 0) bad("spec: missing 'depth'");
        spec.countable_rule = EntryExpr::parse("n^3+2");
        if (j.contains("params")) {
            if (!j["params"].is_object()) bad("key 'params': expected an object");
            for (const auto& [key, val] : j["params"].items()) {
                if (key != "a_n") bad("params: unknown key '" + key + "'");
                spec.countable_rule = json_to_expr(val, "params.a_n");
            }
        }
        break;
    case Generator::ers_toeplitz:
        if (!j.contains("toeplitz")) bad("spec: missing 'toeplitz'");
        spec.seed = json_to_seed(j["toeplitz"]);
        if (spec.depth == 0) bad("spec: missing 'depth'");
        break;
    }
    return spec;
}

DiagramSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::invalid_spec, "cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string spec_to_json(const DiagramSpec& spec) {
    json j;
    j["generator"] = generator_name(spec.generator);
    if (spec.root_edges) {
        json r = json::array();
        for (const Int& v : *spec.root_edges) r.push_back(int_to_json(v));
        j["root_edges"] = std::move(r);
    }
    switch (spec.generator) {
    case Generator::explicit_matrices: {
        json ms = json::array();
        for (const IntMatrix& m : spec.matrices) ms.push_back(matrix_to_json(m));
        j["matrices"] = std::move(ms);
        break;
    }
    case Generator::stationary:
        j["matrix"] = matrix_to_json(spec.matrix);
        j["depth"] = spec.depth;
        break;
    case Generator::entries: {
        json rows = json::array();
        for (const auto& row : spec.entry_rules) {
            json r = json::array();
            for (const EntryExpr& e : row) r.push_back(e.str());
            rows.push_back(std::move(r));
        }
        j["entries"] = std::move(rows);
        j["depth"] = spec.depth;
        break;
    }
    case Generator::pascal:
        j["depth"] = spec.depth;
        break;
    case Generator::countable:
        j["depth"] = spec.depth;
        j["params"] = {{"a_n", spec.countable_rule.str()}};
        break;
    case Generator::ers_toeplitz: {
        const ToeplitzSeed& s = *spec.seed;
        json t;
        t["alphabet"] = s.alphabet;
        json blk = json::array();
        for (int c : s.block)
            blk.push_back(c < 0 ? json(nullptr) : json(s.alphabet[c]));
        t["block"] = std::move(blk);
        if (s.has_copy_rule)
            t["lambda"] = s.copy_rule.str();
        else
            t["lambda"] = s.copy_list;
        json fills = json::array();
        for (const auto& stage : s.fills) {
            json fs = json::array();
            for (const auto& [pos, sym] : stage)
                fs.push_back(json::array({pos, s.alphabet[sym]}));
            fills.push_back(std::move(fs));
        }
        t["fills"] = std::move(fills);
        j["toeplitz"] = std::move(t);
        j["depth"] = spec.depth;
        break;
    }
    }
    if (!spec.order.empty()) {
        json o;
        for (const auto& [key, srcs] : spec.order)
            o[std::to_string(key.first) + ":" + std::to_string(key.second)] = srcs;
        j["order"] = std::move(o);
    }
    return j.dump(2) + "\n";
}

Diagram::Diagram(std::vector<IntMatrix> incidence,
                 std::shared_ptr<const DiagramSpec> spec, OrderMap order)
    : incidence_(std::move(incidence)), spec_(std::move(spec)),
      order_(std::move(order)) {
    if (incidence_.empty())
        throw Error(ErrorKind::invalid_diagram, "diagram has no levels");
    if (incidence_[0].cols() != 1)
        throw Error(ErrorKind::invalid_diagram, "level-0 incidence must have one column");
    for (std::size_t n = 0; n < incidence_.size(); ++n) {
        const IntMatrix& m = incidence_[n];
        if (n > 0 && m.cols() != incidence_[n - 1].rows())
            throw Error(ErrorKind::invalid_diagram,
                        "incidence shapes disagree between levels " +
                            std::to_string(n - 1) + " and " + std::to_string(n));
        std::vector<bool> col_hit(m.cols(), false);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            bool row_hit = false;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(i, j) < 0)
                    throw Error(ErrorKind::invalid_diagram,
                                "negative edge count at level " + std::to_string(n));
                if (m(i, j) > 0) row_hit = col_hit[j] = true;
            }
            if (!row_hit)
                throw Error(ErrorKind::invalid_diagram,
                            "vertex " + std::to_string(i) + " at level " +
                                std::to_string(n + 1) + " has no incoming edges");
        }
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!col_hit[j])
                throw Error(ErrorKind::invalid_diagram,
                            "vertex " + std::to_string(j) + " at level " +
                                std::to_string(n) + " has no outgoing edges");
    }

    heights_.reserve(incidence_.size());
    IntVec h;
    for (std::size_t i = 0; i < incidence_[0].rows(); ++i)
        h.push_back(incidence_[0](i, 0));
    heights_.push_back(h);
    for (std::size_t n = 1; n < incidence_.size(); ++n) {
        h = incidence_[n].apply(h);
        for (const Int& v : h) guard_size(v);
        heights_.push_back(h);
    }

    stochastic_.reserve(depth() > 1 ? depth() - 1 : 0);
    for (std::size_t n = 1; n < depth(); ++n) {
        const IntMatrix& m = incidence_[n];
        RatMatrix f(m.rows(), m.cols());
        const IntVec& hn = heights_[n - 1];
        const IntVec& hn1 = heights_[n];
        for (std::size_t v = 0; v < m.rows(); ++v)
            for (std::size_t w = 0; w < m.cols(); ++w) {
                if (m(v, w) == 0) continue;
                Rat q(m(v, w) * hn[w], hn1[v]);
                q.canonicalize();
                f(v, w) = q;
            }
        stochastic_.push_back(std::move(f));
    }

    for (const auto& [key, srcs] : order_) {
        auto [level, vertex] = key;
        if (level < 1 || level > depth())
            throw Error(ErrorKind::invalid_spec,
                        "order: level " + std::to_string(level) + " out of range");
        const IntMatrix& m = incidence_[level - 1];
        if (vertex >= m.rows())
            throw Error(ErrorKind::invalid_spec,
                        "order: vertex " + std::to_string(vertex) +
                            " out of range at level " + std::to_string(level));
        IntVec count(m.cols());
        for (std::size_t s : srcs) {
            if (s >= m.cols())
                throw Error(ErrorKind::invalid_spec, "order: source out of range");
            count[s] += 1;
        }
        for (std::size_t w = 0; w < m.cols(); ++w)
            if (count[w] != m(vertex, w))
                throw Error(ErrorKind::invalid_spec,
                            "order for level " + std::to_string(level) + " vertex " +
                                std::to_string(vertex) +
                                " does not match the edge multiset");
    }
}

std::size_t Diagram::num_vertices(std::size_t level) const {
    if (level == 0) return 1;
    if (level > depth())
        throw Error(ErrorKind::range, "level " + std::to_string(level) +
                                          " beyond depth " + std::to_string(depth()));
    return incidence_[level - 1].rows();
}

const IntMatrix& Diagram::incidence(std::size_t n) const {
    if (n >= depth())
        throw Error(ErrorKind::range, "incidence level " + std::to_string(n) +
                                          " beyond depth " + std::to_string(depth()));
    return incidence_[n];
}

IntVec Diagram::root_edges() const {
    IntVec r;
    for (std::size_t i = 0; i < incidence_[0].rows(); ++i)
        r.push_back(incidence_[0](i, 0));
    return r;
}

const IntVec& Diagram::heights(std::size_t n) const {
    if (n < 1 || n > depth())
        throw Error(ErrorKind::range, "heights level " + std::to_string(n) +
                                          " outside 1.." + std::to_string(depth()));
    return heights_[n - 1];
}

const RatMatrix& Diagram::stochastic(std::size_t n) const {
    if (n < 1 || n + 1 > depth())
        throw Error(ErrorKind::range, "stochastic level " + std::to_string(n) +
                                          " outside 1.." + std::to_string(depth() - 1));
    return stochastic_[n - 1];
}

std::vector<std::size_t> Diagram::edge_sources(std::size_t level,
                                               std::size_t vertex) const {
    if (level < 1 || level > depth())
        throw Error(ErrorKind::range, "edge level out of range");
    const IntMatrix& m = incidence_[level - 1];
    if (vertex >= m.rows()) throw Error(ErrorKind::range, "edge vertex out of range");
    auto it = order_.find({level, vertex});
    if (it != order_.end()) return it->second;
    std::vector<std::size_t> srcs;
    for (std::size_t w = 0; w < m.cols(); ++w)
        for (Int c = 0; c < m(vertex, w); ++c) srcs.push_back(w);
    return srcs;
}

Diagram materialize(const DiagramSpec& spec) {
    auto keep = std::make_shared<DiagramSpec>(spec);
    std::vector<IntMatrix> inc;

    auto root_column = [&](std::size_t width, IntVec fallback) {
        IntVec r = spec.root_edges.value_or(fallback);
        if (r.size() != width)
            bad("root_edges: expected " + std::to_string(width) + " entries");
        IntMatrix m(width, 1);
        for (std::size_t i = 0; i < width; ++i) m(i, 0) = r[i];
        return m;
    };

    switch (spec.generator) {
    case Generator::explicit_matrices: {
        std::size_t w = spec.matrices.empty() ? spec.root_edges->size()
                                              : spec.matrices[0].cols();
        inc.push_back(root_column(w, IntVec(w, 1)));
        for (const IntMatrix& m : spec.matrices) inc.push_back(m);
        break;
    }
    case Generator::stationary: {
        std::size_t k = spec.matrix.rows();
        inc.push_back(root_column(k, IntVec(k, 1)));
        for (std::size_t n = 1; n < spec.depth; ++n) inc.push_back(spec.matrix);
        break;
    }
    case Generator::entries: {
        std::size_t k = spec.entry_rules.size();
        inc.push_back(root_column(k, IntVec(k, 1)));
        for (std::size_t n = 1; n < spec.depth; ++n) {
            IntMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    m(i, j) = spec.entry_rules[i][j].eval(Int(n));
                    if (m(i, j) < 0)
                        bad("entries[" + std::to_string(i) + "][" + std::to_string(j) +
                            "] is negative at level " + std::to_string(n));
                }
            inc.push_back(std::move(m));
        }
        break;
    }
    case Generator::pascal: {
        if (spec.root_edges) bad("pascal: root edges are fixed at (1, 1)");
        IntMatrix r(2, 1);
        r(0, 0) = r(1, 0) = 1;
        inc.push_back(std::move(r));
        for (std::size_t n = 1; n < spec.depth; ++n) {
            IntMatrix m(n + 2, n + 1);
            for (std::size_t v = 0; v <= n + 1; ++v) {
                if (v <= n) m(v, v) = 1;
                if (v >= 1) m(v, v - 1) = 1;
            }
            inc.push_back(std::move(m));
        }
        break;
    }
    case Generator::countable: {
        Int a0 = spec.countable_rule.eval(0);
        if (a0 < 1) bad("countable: a_n must be >= 1 at n = 0");
        inc.push_back(root_column(2, IntVec(2, a0)));
        for (std::size_t n = 1; n < spec.depth; ++n) {
            Int an = spec.countable_rule.eval(Int(n));
            if (an < 1)
                bad("countable: a_n must be >= 1 at n = " + std::to_string(n));
            IntMatrix m(n + 2, n + 1);
            for (std::size_t v = 0; v <= n + 1; ++v)
                for (std::size_t w = 0; w <= n; ++w)
                    m(v, w) = (v == w || (v == n + 1 && w == n)) ? an : Int(1);
            inc.push_back(std::move(m));
        }
        break;
    }
    case Generator::ers_toeplitz: {
        if (spec.root_edges) bad("ers-toeplitz: root edges are fixed by the seed");
        if (!spec.seed) bad("ers-toeplitz: missing seed");
        inc = toeplitz_families(*spec.seed, spec.depth).incidence;
        break;
    }
    }
    return Diagram(std::move(inc), keep, spec.order);
}

Diagram telescope(const Diagram& d, const std::vector<std::size_t>& levels) {
    if (levels.size() < 2)
        throw Error(ErrorKind::range, "telescope: need at least two levels");
    if (levels[0] != 0)
        throw Error(ErrorKind::range, "telescope: levels must start at 0");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1])
            throw Error(ErrorKind::range, "telescope: levels must be strictly increasing");
    if (levels.back() > d.depth())
        throw Error(ErrorKind::range, "telescope: level " +
                                          std::to_string(levels.back()) +
                                          " beyond depth " + std::to_string(d.depth()));
    std::vector<IntMatrix> inc;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        IntMatrix m = d.incidence(levels[k]);
        for (std::size_t i = levels[k] + 1; i < levels[k + 1]; ++i)
            m = d.incidence(i).mul(m);
        inc.push_back(std::move(m));
    }
    return Diagram(std::move(inc));
}

ErsReport ers_check(const Diagram& d) {
    ErsReport rep;
    rep.equal_row_sums = true;
    for (std::size_t n = 0; n < d.depth(); ++n) {
        const IntMatrix& m = d.incidence(n);
        Int first = 0;
        bool constant = true;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
            if (i == 0)
                first = s;
            else if (s != first)
                constant = false;
        }
        if (constant)
            rep.row_sums.emplace_back(first);
        else {
            rep.row_sums.emplace_back(std::nullopt);
            if (n >= 1) rep.equal_row_sums = false;
        }
    }
    return rep;
}

}  // namespace bratteli
