#include "permweyl/codes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace permweyl {

std::string RelationCode::serialize() const {
    std::ostringstream os;
    os << "S" << n_states << "O" << shift_offset << ";";
    for (const auto& e : edges) os << e.src << ">" << e.dst << "[" << e.x << "," << e.y << "];";
    return os.str();
}

std::string RelationCode::to_json() const {
    nlohmann::json j;
    j["states"] = n_states;
    j["shift_offset"] = shift_offset;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges)
        j["edges"].push_back({{"from", e.src},
                              {"to", e.dst},
                              {"x", base->edge_name(e.x)},
                              {"y", base->edge_name(e.y)}});
    return j.dump();
}

RelationCode align_code(const DLGraph& g, int level) {
    RelationCode code;
    code.base = g.base;
    code.shift_offset = level - 1;
    if (level == 1) {
        code.n_states = g.n_vertices;
        for (const auto& e : g.edges) code.edges.push_back({e.src, e.dst, e.first, e.second});
        return minimize(trim(code));
    }
    // States are windows of level-1 consecutive edges of g; each step
    // reads the entering edge's first label and emits the window head's
    // second label, so the two tracks line up.
    std::vector<std::vector<int>> out(g.n_vertices);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) out[g.edges[i].src].push_back(i);
    std::vector<std::vector<int>> windows;
    std::map<std::vector<int>, int> window_id;
    std::vector<int> cur;
    auto build = [&](auto&& self, int at, int depth) -> void {
        if (depth == level - 1) {
            window_id.emplace(cur, static_cast<int>(windows.size()));
            if (window_id[cur] == static_cast<int>(windows.size())) windows.push_back(cur);
            return;
        }
        for (int i : out[at]) {
            cur.push_back(i);
            self(self, g.edges[i].dst, depth + 1);
            cur.pop_back();
        }
    };
    for (int v = 0; v < g.n_vertices; ++v) build(build, v, 0);
    code.n_states = static_cast<int>(windows.size());
    for (int w = 0; w < code.n_states; ++w) {
        const auto& win = windows[w];
        int tail = g.edges[win.back()].dst;
        for (int i : out[tail]) {
            std::vector<int> next(win.begin() + 1, win.end());
            next.push_back(i);
            code.edges.push_back({w, window_id.at(next), g.edges[i].first,
                                  g.edges[win.front()].second});
        }
    }
    return minimize(trim(code));
}

RelationCode align_code(const PermutationGraph& pg) {
    return align_code(DLGraph::of(pg), pg.level());
}

RelationCode align_code(const OrderedPermutationGraph& og) {
    return align_code(og.as_dlgraph(), og.level);
}

RelationCode trim(const RelationCode& c) {
    int n = c.n_states;
    std::vector<char> alive(n, 1);
    // Iteratively drop states with no outgoing or no incoming live edge.
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<char> has_out(n, 0), has_in(n, 0);
        for (const auto& e : c.edges) {
            if (!alive[e.src] || !alive[e.dst]) continue;
            has_out[e.src] = 1;
            has_in[e.dst] = 1;
        }
        for (int s = 0; s < n; ++s)
            if (alive[s] && (!has_out[s] || !has_in[s])) {
                alive[s] = 0;
                changed = true;
            }
    }
    RelationCode out;
    out.base = c.base;
    out.shift_offset = c.shift_offset;
    std::vector<int> remap(n, -1);
    for (int s = 0; s < n; ++s)
        if (alive[s]) remap[s] = out.n_states++;
    for (const auto& e : c.edges)
        if (alive[e.src] && alive[e.dst]) out.edges.push_back({remap[e.src], remap[e.dst], e.x, e.y});
    return out;
}

RelationCode minimize(const RelationCode& c) {
    int n = c.n_states;
    if (n == 0) return c;
    std::vector<int> cls(n, 0);
    int n_classes = 1;
    std::vector<std::vector<int>> out(n);
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) out[c.edges[i].src].push_back(i);
    using Move = std::tuple<EdgeId, EdgeId, int>;
    for (;;) {
        std::map<std::vector<Move>, int> sig_id;
        std::vector<int> next_cls(n);
        for (int s = 0; s < n; ++s) {
            std::set<Move> moves;
            for (int i : out[s]) {
                const auto& e = c.edges[i];
                moves.insert({e.x, e.y, cls[e.dst]});
            }
            std::vector<Move> sig;
            sig.reserve(moves.size() + 1);
            sig.push_back({-1, -1, cls[s]});
            sig.insert(sig.end(), moves.begin(), moves.end());
            auto [it, fresh] = sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size()));
            next_cls[s] = it->second;
        }
        int m = static_cast<int>(sig_id.size());
        cls = std::move(next_cls);
        if (m == n_classes) break;
        n_classes = m;
    }
    RelationCode out_code;
    out_code.base = c.base;
    out_code.shift_offset = c.shift_offset;
    out_code.n_states = n_classes;
    std::set<std::tuple<int, int, EdgeId, EdgeId>> seen;
    for (const auto& e : c.edges)
        if (seen.insert({cls[e.src], cls[e.dst], e.x, e.y}).second)
            out_code.edges.push_back({cls[e.src], cls[e.dst], e.x, e.y});
    return out_code;
}

RelationCode compose_codes(const RelationCode& first, const RelationCode& second,
                           std::size_t max_product_edges) {
    if (first.base != second.base) throw std::runtime_error("base graph mismatch");
    RelationCode out;
    out.base = first.base;
    out.shift_offset = first.shift_offset + second.shift_offset;
    std::vector<std::vector<int>> by_x(first.base->num_edges());
    for (int i = 0; i < static_cast<int>(second.edges.size()); ++i)
        by_x[second.edges[i].x].push_back(i);
    std::size_t product = 0;
    for (const auto& ea : first.edges) product += by_x[ea.y].size();
    if (product > max_product_edges)
        throw BudgetExceeded("code composition would create " + std::to_string(product) +
                             " edges, exceeding the state budget");
    // Product states, discovered on the fly from matched edge pairs.
    std::map<std::pair<int, int>, int> state_id;
    auto id_of = [&](int a, int b) {
        auto [it, fresh] = state_id.emplace(std::pair{a, b}, out.n_states);
        if (fresh) ++out.n_states;
        return it->second;
    };
    for (const auto& ea : first.edges)
        for (int i : by_x[ea.y]) {
            const auto& eb = second.edges[i];
            out.edges.push_back({id_of(ea.src, eb.src), id_of(ea.dst, eb.dst), ea.x, eb.y});
        }
    return minimize(trim(out));
}

RelationCode transpose_code(const RelationCode& c) {
    RelationCode out = c;
    for (auto& e : out.edges) std::swap(e.x, e.y);
    out.shift_offset = -c.shift_offset;
    return out;
}

bool code_is_identity(const RelationCode& c) {
    RelationCode t = trim(c);
    if (t.empty()) return false;
    for (const auto& e : t.edges)
        if (e.x != e.y) return false;
    return true;
}

bool codes_equal(const RelationCode& a, const RelationCode& b) {
    return code_is_identity(compose_codes(a, transpose_code(b)));
}

std::vector<std::vector<EdgeId>> periodic_points(const Graph& g, int p) {
    std::vector<std::vector<EdgeId>> points;
    std::vector<EdgeId> cur;
    auto extend = [&](auto&& self, VertexId at, VertexId home, int depth) -> void {
        if (depth == p) {
            if (at == home) points.push_back(cur);
            return;
        }
        for (EdgeId e : g.out_edges(at)) {
            cur.push_back(e);
            self(self, g.range(e), home, depth + 1);
            cur.pop_back();
        }
    };
    for (int r = 0; r < g.num_edges(); ++r) {
        EdgeId e = g.edge_at_rank(r);
        cur.assign(1, e);
        extend(extend, g.range(e), g.source(e), 1);
    }
    return points;
}

PeriodicEvaluator::PeriodicEvaluator(const DLGraph& g, int level)
    : base_(g.base), level_(level), nv_(g.n_vertices) {
    if (nv_ > 64)
        throw std::runtime_error("periodic evaluation supports at most 64 graph vertices");
    int ne = base_->num_edges();
    by_x_.assign(ne, {});
    fwd_.assign(ne, std::vector<std::uint64_t>(nv_, 0));
    bwd_.assign(ne, std::vector<std::uint64_t>(nv_, 0));
    for (const auto& e : g.edges) {
        by_x_[e.first].push_back({e.src, e.dst, e.second});
        fwd_[e.first][e.src] |= 1ull << e.dst;
        bwd_[e.first][e.dst] |= 1ull << e.src;
    }
}

std::vector<EdgeId> PeriodicEvaluator::apply(const std::vector<EdgeId>& word) const {
    int p = static_cast<int>(word.size());
    std::uint64_t full = nv_ == 64 ? ~0ull : (1ull << nv_) - 1;
    // The lift's vertex at phase j needs an arbitrarily long consistent
    // past AND future; each one-sided full-set iteration is monotone
    // decreasing, and the intersection is a singleton by first-label
    // synchronization.
    std::vector<std::uint64_t> past(p, full), future(p, full);
    auto sweep = [&](bool forward) {
        auto& sets = forward ? past : future;
        for (int rounds = 0; rounds < nv_ * p + 2; ++rounds) {
            bool changed = false;
            for (int s = 0; s < p; ++s) {
                int j = forward ? s : p - 1 - s;
                const auto& masks = forward ? fwd_[word[j]] : bwd_[word[j]];
                std::uint64_t from = forward ? sets[j] : sets[(j + 1) % p];
                std::uint64_t next = 0;
                std::uint64_t bits = from;
                while (bits) {
                    int v = std::countr_zero(bits);
                    bits &= bits - 1;
                    next |= masks[v];
                }
                auto& cell = forward ? sets[(j + 1) % p] : sets[j];
                std::uint64_t merged = cell & next;
                if (merged != cell) {
                    cell = merged;
                    changed = true;
                }
                if (!cell) throw std::runtime_error("periodic word has no lift");
            }
            if (!changed) break;
        }
    };
    sweep(true);
    sweep(false);
    std::vector<int> phase(p);
    for (int j = 0; j < p; ++j) {
        std::uint64_t both = past[j] & future[j];
        if (std::popcount(both) != 1)
            throw std::runtime_error("periodic lift did not synchronize to a single vertex");
        phase[j] = std::countr_zero(both);
    }
    std::vector<EdgeId> image(p);
    int off = (level_ - 1) % p;
    for (int j = 0; j < p; ++j) {
        EdgeId y = -1;
        for (const auto& te : by_x_[word[j]])
            if (te.src == phase[j] && te.dst == phase[(j + 1) % p]) y = te.second;
        if (y < 0) throw std::runtime_error("periodic lift is inconsistent");
        image[(j + off) % p] = y;
    }
    return image;
}

std::vector<EdgeId> apply_to_periodic(const DLGraph& g, int level,
                                      const std::vector<EdgeId>& word) {
    return PeriodicEvaluator(g, level).apply(word);
}

}  // namespace permweyl
