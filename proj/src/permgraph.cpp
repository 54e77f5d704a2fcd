#include "permweyl/permgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace permweyl {

PermutationGraph::PermutationGraph(const PathPerm& perm,
                                   std::shared_ptr<const PathTable> level_k_minus_1)
    : base_(&perm.paths().graph()),
      level_(perm.level()),
      vertices_(std::move(level_k_minus_1)),
      inputs_(perm.paths_ptr()) {
    if (vertices_->level() != level_ - 1)
        throw std::invalid_argument("vertex table level must be k-1");
    edges_.resize(inputs_->size());
    for (int mu = 0; mu < inputs_->size(); ++mu) {
        const auto& in = inputs_->edges(mu);
        const auto& out = inputs_->edges(perm.apply(mu));
        LabeledEdge le;
        le.first = in.front();
        le.second = out.back();
        if (level_ == 1) {
            le.src = *vertices_->find_vertex_path(base_->source(out.front()));
            le.dst = *vertices_->find_vertex_path(base_->range(in.front()));
        } else {
            le.src = *vertices_->find(std::vector<EdgeId>(out.begin(), out.end() - 1));
            le.dst = *vertices_->find(std::vector<EdgeId>(in.begin() + 1, in.end()));
        }
        edges_[mu] = le;
    }
}

PermutationGraph PermutationGraph::build(const PathPerm& perm) {
    auto vt = std::make_shared<const PathTable>(perm.paths().graph(), perm.level() - 1);
    return PermutationGraph(perm, std::move(vt));
}

std::string PermutationGraph::to_dot(bool) const {
    std::ostringstream os;
    os << "digraph permgraph {\n  rankdir=LR;\n";
    int V = base_->num_vertices();
    for (int c = 0; c < V * V; ++c) {
        const auto& members = vertices_->class_members(c);
        if (members.empty()) continue;
        os << "  subgraph cluster_" << c << " {\n    style=dashed;\n    label=\""
           << base_->vertex_name(c / V) << "->" << base_->vertex_name(c % V) << "\";\n";
        for (int p : members) os << "    v" << p << " [label=\"" << vertices_->name(p) << "\"];\n";
        os << "  }\n";
    }
    for (const auto& e : edges_)
        os << "  v" << e.src << " -> v" << e.dst << " [label=\"" << base_->edge_name(e.first)
           << "/" << base_->edge_name(e.second) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string PermutationGraph::to_json() const {
    nlohmann::json j;
    j["level"] = level_;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges_)
        j["edges"].push_back({{"source", vertices_->name(e.src)},
                              {"range", vertices_->name(e.dst)},
                              {"first", base_->edge_name(e.first)},
                              {"second", base_->edge_name(e.second)}});
    return j.dump();
}

PathPerm recover_permutation(const LabeledGraphView& g,
                             std::shared_ptr<const PathTable> level_k_table) {
    auto rep = check_lemma_properties(g);
    if (!rep.all_pass())
        throw std::runtime_error("not a permutation graph:\n" + rep.to_string());
    const PathTable& pk = *level_k_table;
    std::vector<int> image(pk.size(), -1);
    for (const auto& e : g.edges) {
        std::vector<EdgeId> in;
        in.push_back(e.first);
        const auto& dst_edges = g.vertices->edges(e.dst);
        in.insert(in.end(), dst_edges.begin(), dst_edges.end());
        std::vector<EdgeId> out(g.vertices->edges(e.src));
        out.push_back(e.second);
        auto mu = pk.find(in);
        auto img = pk.find(out);
        if (!mu || !img) throw std::runtime_error("edge does not define valid level-k paths");
        image[*mu] = *img;
    }
    return PathPerm::from_global_map(std::move(level_k_table), image);
}

PathPerm recover_permutation(const PermutationGraph& pg) {
    return recover_permutation(pg.view(), pg.input_table());
}

std::string LemmaReport::to_string() const {
    std::string out;
    for (int i = 0; i < 4; ++i)
        for (const auto& f : failures[i])
            out += "condition (" + std::to_string(i + 1) + "): " + f + "\n";
    return out.empty() ? "all conditions hold" : out;
}

LemmaReport check_lemma_properties(const LabeledGraphView& g) {
    LemmaReport rep;
    const Graph& base = *g.base;
    const PathTable& vt = *g.vertices;
    auto vname = [&](int v) { return vt.name(v); };
    auto ename = [&](EdgeId e) { return base.edge_name(e); };

    for (const auto& le : g.edges) {
        if (vt.source(le.src) != base.source(le.first) ||
            vt.source(le.dst) != base.range(le.first))
            rep.failures[0].push_back("edge " + vname(le.src) + " -[" + ename(le.first) + "," +
                                      ename(le.second) + "]-> " + vname(le.dst) +
                                      " breaks the first-label endpoint constraints");
        if (vt.range(le.src) != base.source(le.second) ||
            vt.range(le.dst) != base.range(le.second))
            rep.failures[2].push_back("edge " + vname(le.src) + " -[" + ename(le.first) + "," +
                                      ename(le.second) + "]-> " + vname(le.dst) +
                                      " breaks the second-label endpoint constraints");
    }
    // (2): exactly one incoming edge per (first label e, vertex alpha) with
    // s(alpha) = r(e); (4): exactly one outgoing per (second label f, beta)
    // with r(beta) = s(f).
    std::map<std::pair<EdgeId, int>, int> in_count, out_count;
    for (const auto& le : g.edges) {
        in_count[{le.first, le.dst}]++;
        out_count[{le.second, le.src}]++;
    }
    for (EdgeId e = 0; e < base.num_edges(); ++e) {
        for (int alpha = 0; alpha < vt.size(); ++alpha) {
            if (vt.source(alpha) != base.range(e)) continue;
            int c = in_count.count({e, alpha}) ? in_count[{e, alpha}] : 0;
            if (c != 1)
                rep.failures[1].push_back("vertex " + vname(alpha) + " receives " +
                                          std::to_string(c) + " edges with first label " + ename(e));
        }
        for (int beta = 0; beta < vt.size(); ++beta) {
            if (vt.range(beta) != base.source(e)) continue;
            int c = out_count.count({e, beta}) ? out_count[{e, beta}] : 0;
            if (c != 1)
                rep.failures[3].push_back("vertex " + vname(beta) + " emits " + std::to_string(c) +
                                          " edges with second label " + ename(e));
        }
    }
    return rep;
}

bool check_subgraph_conditions(const LabeledGraphView& g) {
    const Graph& base = *g.base;
    const PathTable& vt = *g.vertices;
    std::set<std::pair<EdgeId, int>> in_seen, out_seen;
    for (const auto& le : g.edges) {
        if (vt.source(le.src) != base.source(le.first)) return false;
        if (vt.source(le.dst) != base.range(le.first)) return false;
        if (vt.range(le.src) != base.source(le.second)) return false;
        if (vt.range(le.dst) != base.range(le.second)) return false;
        if (!in_seen.insert({le.first, le.dst}).second) return false;
        if (!out_seen.insert({le.second, le.src}).second) return false;
    }
    return true;
}

bool check_resolving(const LabeledGraphView& g, Labeling which) {
    std::set<std::pair<int, EdgeId>> seen;
    for (const auto& le : g.edges) {
        auto key = which == Labeling::First ? std::pair<int, EdgeId>{le.dst, le.first}
                                            : std::pair<int, EdgeId>{le.src, le.second};
        if (!seen.insert(key).second) return false;
    }
    return true;
}

TextileReport as_textile_system(const PermutationGraph& pg) {
    TextileReport rep;
    const Graph& base = pg.base();
    const PathTable& vt = *pg.vertex_table();

    // p and q must be graph homomorphisms.
    for (const auto& le : pg.edges()) {
        if (base.source(le.first) != vt.source(le.src) || base.range(le.first) != vt.source(le.dst))
            rep.violations.push_back("p is not a graph homomorphism at an edge labeled " +
                                     base.edge_name(le.first));
        if (base.source(le.second) != vt.range(le.src) || base.range(le.second) != vt.range(le.dst))
            rep.violations.push_back("q is not a graph homomorphism at an edge labeled " +
                                     base.edge_name(le.second));
    }
    // Quadruple (source, range, p, q) determines the edge.
    std::set<std::tuple<int, int, EdgeId, EdgeId>> quads;
    for (const auto& le : pg.edges())
        if (!quads.insert({le.src, le.dst, le.first, le.second}).second)
            rep.violations.push_back("two edges share (source, range, p, q)");
    // p left-resolving as a homomorphism: unique incoming edge per
    // (vertex, base edge into its p-image); q right-resolving dually.
    std::map<std::pair<int, EdgeId>, int> into, outof;
    for (const auto& le : pg.edges()) {
        into[{le.dst, le.first}]++;
        outof[{le.src, le.second}]++;
    }
    for (int v = 0; v < vt.size(); ++v) {
        for (EdgeId e : base.in_edges(vt.source(v)))
            if (into[{v, e}] != 1)
                rep.violations.push_back("p not left-resolving at vertex " + vt.name(v) +
                                         ", base edge " + base.edge_name(e));
        for (EdgeId f : base.out_edges(vt.range(v)))
            if (outof[{v, f}] != 1)
                rep.violations.push_back("q not right-resolving at vertex " + vt.name(v) +
                                         ", base edge " + base.edge_name(f));
    }
    return rep;
}

}  // namespace permweyl
