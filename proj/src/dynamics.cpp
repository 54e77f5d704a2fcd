#include "permweyl/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace permweyl {

namespace {

// Ordered off-diagonal pair graph for one labeling. Node (v, w), v != w;
// arcs carry the realizing edge pair so failures replay as two cycles.
struct PairGraph {
    int nv = 0;
    struct Arc {
        int to;
        int edge_a, edge_b;  // indices into the labeled edge list
    };
    std::vector<std::vector<Arc>> adj;  // indexed by v * nv + w

    int node(int v, int w) const { return v * nv + w; }
};

PairGraph build_pair_graph(const DLGraph& g, Labeling which) {
    PairGraph pg;
    pg.nv = g.n_vertices;
    pg.adj.assign(static_cast<size_t>(pg.nv) * pg.nv, {});
    std::map<EdgeId, std::vector<int>> by_label;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        by_label[which == Labeling::First ? g.edges[i].first : g.edges[i].second].push_back(i);
    for (const auto& [label, ids] : by_label) {
        for (int a : ids)
            for (int b : ids) {
                if (a == b) continue;
                const auto& ea = g.edges[a];
                const auto& eb = g.edges[b];
                if (ea.src == eb.src || ea.dst == eb.dst) continue;  // diagonal endpoint
                pg.adj[pg.node(ea.src, eb.src)].push_back({pg.node(ea.dst, eb.dst), a, b});
            }
    }
    return pg;
}

void require_resolving(const DLGraph& g, Labeling which) {
    std::map<std::pair<int, EdgeId>, int> seen;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const auto& e = g.edges[i];
        auto key = which == Labeling::First ? std::pair<int, EdgeId>{e.dst, e.first}
                                            : std::pair<int, EdgeId>{e.src, e.second};
        auto [it, fresh] = seen.insert({key, i});
        if (!fresh)
            throw std::runtime_error(
                std::string(which == Labeling::First ? "not left-resolving" : "not right-resolving") +
                ": edges " + std::to_string(it->second) + " and " + std::to_string(i) + " clash on " +
                (which == Labeling::First ? "(range, first label)" : "(source, second label)"));
    }
}

// Iterative DFS cycle search; returns the arc sequence of a cycle if any.
std::optional<std::vector<PairGraph::Arc>> find_cycle(const PairGraph& pg) {
    int n = static_cast<int>(pg.adj.size());
    std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<std::pair<int, size_t>> stack;
    std::vector<PairGraph::Arc> trail;
    for (int s = 0; s < n; ++s) {
        if (color[s] != 0 || pg.adj[s].empty()) continue;
        stack.push_back({s, 0});
        color[s] = 1;
        trail.clear();  // trail[i] is the arc from stack[i] to stack[i+1]
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            if (idx < pg.adj[u].size()) {
                const auto& arc = pg.adj[u][idx++];
                if (color[arc.to] == 0) {
                    trail.push_back(arc);
                    color[arc.to] = 1;
                    stack.push_back({arc.to, 0});
                } else if (color[arc.to] == 1) {
                    // Close the cycle: arcs from arc.to's stack position onward.
                    std::vector<PairGraph::Arc> cyc;
                    size_t pos = 0;
                    for (size_t i = 0; i < stack.size(); ++i)
                        if (stack[i].first == arc.to) pos = i;
                    for (size_t i = pos; i + 1 < stack.size(); ++i) cyc.push_back(trail[i]);
                    cyc.push_back(arc);
                    return cyc;
                }
            } else {
                color[u] = 2;
                stack.pop_back();
                if (!stack.empty()) trail.pop_back();
            }
        }
    }
    return std::nullopt;
}

}  // namespace

SyncResult is_synchronizing(const DLGraph& g, Labeling which) {
    require_resolving(g, which);
    PairGraph pg = build_pair_graph(g, which);
    auto cyc = find_cycle(pg);
    if (!cyc) return {true, std::nullopt};
    CycleWitness w;
    for (const auto& arc : *cyc) {
        w.cycle1.push_back(arc.edge_a);
        w.cycle2.push_back(arc.edge_b);
    }
    return {false, w};
}

int synchronization_delay(const DLGraph& g, Labeling which) {
    if (!is_synchronizing(g, which).synchronizing)
        throw std::runtime_error("graph is not synchronizing in the requested label");
    if (g.n_vertices < 2) return 0;
    PairGraph pg = build_pair_graph(g, which);
    // Longest arc-walk in the (acyclic) pair graph, by memoized DFS.
    int n = static_cast<int>(pg.adj.size());
    std::vector<int> best(n, -1);
    auto depth = [&](auto&& self, int u) -> int {
        if (best[u] >= 0) return best[u];
        best[u] = 0;
        for (const auto& arc : pg.adj[u]) best[u] = std::max(best[u], 1 + self(self, arc.to));
        return best[u];
    };
    int longest = 0;
    for (int u = 0; u < n; ++u) longest = std::max(longest, depth(depth, u));
    return longest + 1;
}

bool is_diagonal_automorphism(const PermutationGraph& pg) {
    return is_synchronizing(DLGraph::of(pg), Labeling::First).synchronizing;
}

bool is_automorphism(const PermutationGraph& pg) {
    DLGraph g = DLGraph::of(pg);
    return is_synchronizing(g, Labeling::First).synchronizing &&
           is_synchronizing(g, Labeling::Second).synchronizing;
}

OneSidedImage one_sided_image(const PermutationGraph& pg, const std::vector<EdgeId>& word) {
    if (!is_diagonal_automorphism(pg))
        throw std::runtime_error("permutation graph is not synchronizing in the first label");
    DLGraph g = DLGraph::of(pg);
    int L = static_cast<int>(word.size());
    int need = synchronization_delay(g, Labeling::First) + pg.level();
    if (L < need)
        throw std::runtime_error("word of length " + std::to_string(L) +
                                 " is too short; the determinacy threshold is " +
                                 std::to_string(need));
    // Vertices from which the whole suffix lifts.
    std::vector<std::vector<char>> alive(L + 1, std::vector<char>(g.n_vertices, 0));
    std::fill(alive[L].begin(), alive[L].end(), 1);
    for (int j = L - 1; j >= 0; --j)
        for (const auto& e : g.edges)
            if (e.first == word[j] && alive[j + 1][e.dst]) alive[j][e.src] = 1;
    std::vector<int> sources;
    for (int v = 0; v < g.n_vertices; ++v)
        if (alive[0][v]) sources.push_back(v);
    if (sources.size() != 1)
        throw std::runtime_error("word does not determine a unique source (" +
                                 std::to_string(sources.size()) + " candidates)");
    OneSidedImage out;
    const auto& beta = pg.vertex_table()->edges(sources[0]);
    out.image.assign(beta.begin(), beta.end());
    std::vector<char> frontier(g.n_vertices, 0);
    frontier[sources[0]] = 1;
    for (int j = 0; j < L; ++j) {
        std::vector<char> next(g.n_vertices, 0);
        EdgeId second = -2;
        bool determined = true;
        for (const auto& e : g.edges) {
            if (e.first != word[j] || !frontier[e.src] || !alive[j + 1][e.dst]) continue;
            next[e.dst] = 1;
            if (second == -2)
                second = e.second;
            else if (second != e.second)
                determined = false;
        }
        if (!determined) break;
        out.image.push_back(second);
        frontier = std::move(next);
    }
    out.determined_length = static_cast<int>(out.image.size());
    return out;
}

std::string MinimalEmittedSequence::to_string(const Graph& base) const {
    auto tok = [&](const MesToken& t) {
        return base.edge_name(t.edge) + " " + base.vertex_name(t.vertex);
    };
    std::string s;
    for (const auto& t : preperiod) s += tok(t) + " ";
    s += "(";
    for (size_t i = 0; i < period.size(); ++i) s += (i ? " " : "") + tok(period[i]);
    s += ")*";
    return s;
}

int compare_mes(const Graph& base, const MinimalEmittedSequence& a,
                const MinimalEmittedSequence& b) {
    size_t pa = a.period.size(), pb = b.period.size();
    size_t horizon = std::max(a.preperiod.size(), b.preperiod.size()) + pa * pb / std::gcd(pa, pb);
    for (size_t i = 0; i <= horizon; ++i) {
        MesToken x = a.at(i), y = b.at(i);
        if (base.edge_rank(x.edge) != base.edge_rank(y.edge))
            return base.edge_rank(x.edge) < base.edge_rank(y.edge) ? -1 : 1;
        if (x.vertex != y.vertex) return x.vertex < y.vertex ? -1 : 1;
    }
    return 0;
}

MinimalEmittedSequence minimal_emitted_sequence(const DLGraph& g, int vertex) {
    // Out-edges grouped per source vertex.
    std::vector<std::vector<const LabeledEdge*>> out(g.n_vertices);
    for (const auto& e : g.edges) out[e.src].push_back(&e);
    for (int v = 0; v < g.n_vertices; ++v)
        if (out[v].empty()) throw std::runtime_error("vertex without outgoing edges");

    std::vector<int> frontier{vertex};
    std::map<std::vector<int>, int> seen;
    std::vector<MesToken> tokens;
    int start = -1;
    for (;;) {
        auto [it, fresh] = seen.insert({frontier, static_cast<int>(tokens.size())});
        if (!fresh) {
            start = it->second;
            break;
        }
        MesToken best{-1, -1};
        for (int v : frontier)
            for (const auto* e : out[v]) {
                MesToken t{e->first, g.base->range(e->second)};
                if (best.edge < 0 || g.base->edge_rank(t.edge) < g.base->edge_rank(best.edge) ||
                    (t.edge == best.edge && t.vertex < best.vertex))
                    best = t;
            }
        std::set<int> next;
        for (int v : frontier)
            for (const auto* e : out[v])
                if (e->first == best.edge && g.base->range(e->second) == best.vertex)
                    next.insert(e->dst);
        tokens.push_back(best);
        frontier.assign(next.begin(), next.end());
    }

    MinimalEmittedSequence mes;
    mes.preperiod.assign(tokens.begin(), tokens.begin() + start);
    mes.period.assign(tokens.begin() + start, tokens.end());
    // Shortest period via the failure function.
    {
        auto& q = mes.period;
        size_t n = q.size();
        std::vector<size_t> fail(n, 0);
        for (size_t i = 1; i < n; ++i) {
            size_t j = fail[i - 1];
            while (j && !(q[i] == q[j])) j = fail[j - 1];
            if (q[i] == q[j]) ++j;
            fail[i] = j;
        }
        size_t p = n - fail[n - 1];
        if (n % p == 0) q.resize(p);
    }
    // Shortest preperiod: absorb trailing tokens that already match the
    // rotated period.
    while (!mes.preperiod.empty() && mes.preperiod.back() == mes.period.back()) {
        mes.preperiod.pop_back();
        std::rotate(mes.period.begin(), mes.period.end() - 1, mes.period.end());
    }
    return mes;
}

MinimalEmittedSequence minimal_emitted_sequence(const PermutationGraph& pg, int vertex) {
    return minimal_emitted_sequence(DLGraph::of(pg), vertex);
}

int OrderedPermutationGraph::num_vertices() const {
    int n = 0;
    for (int s : block_sizes) n += s;
    return n;
}

int OrderedPermutationGraph::vertex_id(int block, int index) const {
    int n = 0;
    for (int b = 0; b < block; ++b) n += block_sizes[b];
    return n + index;
}

int OrderedPermutationGraph::block_of_vertex(int v) const {
    for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b) {
        if (v < block_sizes[b]) return b;
        v -= block_sizes[b];
    }
    return -1;
}

int OrderedPermutationGraph::index_of_vertex(int v) const {
    for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b) {
        if (v < block_sizes[b]) return v;
        v -= block_sizes[b];
    }
    return -1;
}

std::string OrderedPermutationGraph::symbol_name(int block, int index) const {
    int V = base->num_vertices();
    return "o" + std::to_string(index) + "[" + base->vertex_name(block / V) + "->" +
           base->vertex_name(block % V) + "]";
}

DLGraph OrderedPermutationGraph::as_dlgraph() const {
    DLGraph g;
    g.base = base;
    g.n_vertices = num_vertices();
    for (const auto& e : edges)
        g.edges.push_back({vertex_id(e.src_block, e.src_index), vertex_id(e.dst_block, e.dst_index),
                           e.first, e.second});
    return g;
}

std::string OrderedPermutationGraph::serialize() const {
    std::ostringstream os;
    os << "L" << level << ";";
    for (size_t b = 0; b < block_sizes.size(); ++b)
        if (block_sizes[b]) os << "B" << b << ":" << block_sizes[b] << ";";
    for (const auto& e : edges)
        os << e.src_block << "." << e.src_index << ">" << e.dst_block << "." << e.dst_index << "["
           << e.first << "," << e.second << "];";
    return os.str();
}

std::string OrderedPermutationGraph::to_json() const {
    nlohmann::json j;
    j["level"] = level;
    int V = base->num_vertices();
    j["blocks"] = nlohmann::json::array();
    for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b)
        if (block_sizes[b])
            j["blocks"].push_back({{"source", base->vertex_name(b / V)},
                                   {"range", base->vertex_name(b % V)},
                                   {"size", block_sizes[b]}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges)
        j["edges"].push_back({{"source", symbol_name(e.src_block, e.src_index)},
                              {"range", symbol_name(e.dst_block, e.dst_index)},
                              {"first", base->edge_name(e.first)},
                              {"second", base->edge_name(e.second)}});
    return j.dump();
}

std::string OrderedPermutationGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph ordered_permgraph {\n  rankdir=LR;\n";
    int V = base->num_vertices();
    for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b) {
        if (!block_sizes[b]) continue;
        os << "  subgraph cluster_" << b << " {\n    style=dashed;\n    label=\""
           << base->vertex_name(b / V) << "->" << base->vertex_name(b % V) << "\";\n";
        for (int i = 0; i < block_sizes[b]; ++i)
            os << "    v" << vertex_id(b, i) << " [label=\"o" << i << "\"];\n";
        os << "  }\n";
    }
    for (const auto& e : edges)
        os << "  v" << vertex_id(e.src_block, e.src_index) << " -> v"
           << vertex_id(e.dst_block, e.dst_index) << " [label=\"" << base->edge_name(e.first)
           << "/" << base->edge_name(e.second) << "\"];\n";
    os << "}\n";
    return os.str();
}

PathPerm OrderedPermutationGraph::representative() const {
    auto vt = std::make_shared<const PathTable>(*base, level - 1);
    auto pk = std::make_shared<const PathTable>(*base, level);
    // Block symbol i stands for the i-th path of the matching class.
    auto concrete = [&](int block, int index) { return vt->class_members(block)[index]; };
    std::vector<int> image(pk->size(), -1);
    for (const auto& e : edges) {
        int src = concrete(e.src_block, e.src_index);
        int dst = concrete(e.dst_block, e.dst_index);
        std::vector<EdgeId> in{e.first};
        const auto& de = vt->edges(dst);
        in.insert(in.end(), de.begin(), de.end());
        std::vector<EdgeId> out(vt->edges(src));
        out.push_back(e.second);
        image[*pk->find(in)] = *pk->find(out);
    }
    return PathPerm::from_global_map(pk, image);
}

OrderedPermutationGraph canonical_ordered_graph(const DLGraph& g, int level,
                                                const std::vector<int>& block_of) {
    int nv = g.n_vertices;
    std::vector<MinimalEmittedSequence> mes(nv);
    for (int v = 0; v < nv; ++v) mes[v] = minimal_emitted_sequence(g, v);

    int V = g.base->num_vertices();
    OrderedPermutationGraph og;
    og.level = level;
    og.base = g.base;
    og.block_sizes.assign(V * V, 0);
    std::vector<std::vector<int>> blocks(V * V);
    for (int v = 0; v < nv; ++v) blocks[block_of[v]].push_back(v);
    std::vector<int> rank(nv, -1);
    for (int b = 0; b < V * V; ++b) {
        auto& vs = blocks[b];
        std::sort(vs.begin(), vs.end(), [&](int x, int y) {
            int c = compare_mes(*g.base, mes[x], mes[y]);
            if (c == 0) throw std::runtime_error("tied minimal emitted sequences within a block");
            return c < 0;
        });
        og.block_sizes[b] = static_cast<int>(vs.size());
        for (size_t i = 0; i < vs.size(); ++i) rank[vs[i]] = static_cast<int>(i);
    }

    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const auto& ex = g.edges[x];
        const auto& ey = g.edges[y];
        if (ex.first != ey.first) return g.base->edge_rank(ex.first) < g.base->edge_rank(ey.first);
        VertexId rx = g.base->range(ex.second), ry = g.base->range(ey.second);
        if (rx != ry) return rx < ry;
        int c = compare_mes(*g.base, mes[ex.dst], mes[ey.dst]);
        if (c == 0 && !(ex == ey)) throw std::runtime_error("tied edge order");
        return c < 0;
    });
    for (int idx : order) {
        const auto& e = g.edges[idx];
        og.edges.push_back({block_of[e.src], rank[e.src], block_of[e.dst], rank[e.dst], e.first,
                            e.second});
    }
    return og;
}

OrderedPermutationGraph ordered_permutation_graph(const PermutationGraph& pg) {
    if (!is_diagonal_automorphism(pg))
        throw std::runtime_error("ordered permutation graph requires first-label synchronization");
    const auto& vt = *pg.vertex_table();
    std::vector<int> block_of(vt.size());
    for (int v = 0; v < vt.size(); ++v) block_of[v] = vt.class_of(v);
    return canonical_ordered_graph(DLGraph::of(pg), pg.level(), block_of);
}

bool shift_space_equivalent(const PermutationGraph& a, const PermutationGraph& b) {
    if (a.level() != b.level()) throw std::runtime_error("level mismatch");
    return ordered_permutation_graph(a).serialize() == ordered_permutation_graph(b).serialize();
}

PathPerm apply_g_pi(const PathPerm& tau, const PathPerm& pi) {
    if (tau.level() < 2) throw std::runtime_error("g_pi requires level >= 2");
    if (pi.level() != tau.level() - 1) throw std::runtime_error("pi must live at level k-1");
    PermutationGraph pg = PermutationGraph(tau, pi.paths_ptr());
    LabeledGraphView relabeled = pg.view();
    for (auto& e : relabeled.edges) {
        e.src = pi.apply(e.src);
        e.dst = pi.apply(e.dst);
    }
    return recover_permutation(relabeled, tau.paths_ptr());
}

}  // namespace permweyl
