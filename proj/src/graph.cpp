#include "permweyl/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace permweyl {

std::string ValidationReport::to_string() const {
    if (valid()) return "valid";
    std::string out;
    for (const auto& v : violations) {
        out += v;
        out += '\n';
    }
    return out;
}

VertexId Graph::add_vertex(const std::string& name) {
    if (vertex_by_name_.count(name))
        throw ParseError("duplicate vertex name: " + name);
    VertexId id = num_vertices();
    vertex_names_.push_back(name);
    vertex_by_name_[name] = id;
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

EdgeId Graph::add_edge(const std::string& name, const std::string& source,
                       const std::string& target) {
    if (edge_by_name_.count(name))
        throw ParseError("duplicate edge name: " + name);
    auto s = find_vertex(source);
    auto t = find_vertex(target);
    if (!s) throw ParseError("edge " + name + ": unknown source vertex " + source);
    if (!t) throw ParseError("edge " + name + ": unknown target vertex " + target);
    EdgeId id = num_edges();
    edge_names_.push_back(name);
    edge_by_name_[name] = id;
    edge_src_.push_back(*s);
    edge_dst_.push_back(*t);
    rebuild_order();
    return id;
}

std::optional<VertexId> Graph::find_vertex(const std::string& name) const {
    auto it = vertex_by_name_.find(name);
    if (it == vertex_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> Graph::find_edge(const std::string& name) const {
    auto it = edge_by_name_.find(name);
    if (it == edge_by_name_.end()) return std::nullopt;
    return it->second;
}

std::vector<EdgeId> Graph::edges_between(VertexId u, VertexId v) const {
    std::vector<EdgeId> out;
    for (EdgeId e : out_[u])
        if (edge_dst_[e] == v) out.push_back(e);
    return out;
}

void Graph::rebuild_order() {
    int m = num_edges();
    edges_by_rank_.resize(m);
    std::iota(edges_by_rank_.begin(), edges_by_rank_.end(), 0);
    std::sort(edges_by_rank_.begin(), edges_by_rank_.end(), [&](EdgeId a, EdgeId b) {
        if (edge_src_[a] != edge_src_[b]) return edge_src_[a] < edge_src_[b];
        if (edge_dst_[a] != edge_dst_[b]) return edge_dst_[a] < edge_dst_[b];
        return a < b;
    });
    edge_rank_.assign(m, 0);
    for (int r = 0; r < m; ++r) edge_rank_[edges_by_rank_[r]] = r;
    for (auto& v : out_) v.clear();
    for (auto& v : in_) v.clear();
    for (int r = 0; r < m; ++r) {
        EdgeId e = edges_by_rank_[r];
        out_[edge_src_[e]].push_back(e);
        in_[edge_dst_[e]].push_back(e);
    }
}

ValidationReport Graph::validate() const {
    ValidationReport rep;
    if (num_vertices() == 0) rep.violations.push_back("graph has no vertices");
    for (VertexId v = 0; v < num_vertices(); ++v) {
        if (out_[v].empty())
            rep.violations.push_back("vertex " + vertex_names_[v] + " is a sink (emits no edge)");
        if (in_[v].empty())
            rep.violations.push_back("vertex " + vertex_names_[v] + " is a source (receives no edge)");
    }
    // A cycle with no exit lives entirely among vertices of out-degree 1.
    // Walk the functional subgraph restricted to those vertices.
    std::vector<int> state(num_vertices(), 0);  // 0 new, 1 on trail, 2 done
    for (VertexId start = 0; start < num_vertices(); ++start) {
        if (state[start] != 0 || out_[start].size() != 1) continue;
        std::vector<VertexId> trail;
        VertexId v = start;
        while (state[v] == 0 && out_[v].size() == 1) {
            state[v] = 1;
            trail.push_back(v);
            v = edge_dst_[out_[v][0]];
        }
        if (state[v] == 1) {
            std::string cyc;
            for (auto it = std::find(trail.begin(), trail.end(), v); it != trail.end(); ++it)
                cyc += vertex_names_[*it] + "->";
            rep.violations.push_back("cycle without exit: " + cyc + vertex_names_[v]);
        }
        for (VertexId u : trail) state[u] = 2;
    }
    return rep;
}

bool Graph::single_char_edge_names() const {
    for (const auto& n : edge_names_)
        if (n.size() != 1) return false;
    return true;
}

Graph Graph::parse_text(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        try {
            if (kw == "vertex") {
                std::string name;
                if (!(ls >> name)) throw ParseError("missing vertex name");
                g.add_vertex(name);
            } else if (kw == "edge") {
                std::string name, src, dst;
                if (!(ls >> name >> src >> dst)) throw ParseError("edge needs NAME SRC DST");
                g.add_edge(name, src, dst);
            } else {
                throw ParseError("unknown directive '" + kw + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
    }
    return g;
}

Graph Graph::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    Graph g;
    try {
        for (const auto& v : j.at("vertices")) g.add_vertex(v.get<std::string>());
        for (const auto& e : j.at("edges"))
            g.add_edge(e.at("name").get<std::string>(), e.at("source").get<std::string>(),
                       e.at("target").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph JSON: ") + e.what());
    }
    return g;
}

std::string Graph::to_text() const {
    std::string out;
    for (const auto& v : vertex_names_) out += "vertex " + v + "\n";
    for (EdgeId e = 0; e < num_edges(); ++e)
        out += "edge " + edge_names_[e] + " " + vertex_names_[edge_src_[e]] + " " +
               vertex_names_[edge_dst_[e]] + "\n";
    return out;
}

std::string Graph::to_json() const {
    nlohmann::json j;
    j["vertices"] = vertex_names_;
    j["edges"] = nlohmann::json::array();
    for (EdgeId e = 0; e < num_edges(); ++e)
        j["edges"].push_back({{"name", edge_names_[e]},
                              {"source", vertex_names_[edge_src_[e]]},
                              {"target", vertex_names_[edge_dst_[e]]}});
    return j.dump();
}

std::uint64_t Graph::content_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : to_text()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

PathTable::PathTable(const Graph& g, int level) : graph_(&g), level_(level) {
    if (level < 0) throw std::invalid_argument("path level must be >= 0");
    if (level == 0) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            edges_.emplace_back();
            src_.push_back(v);
            dst_.push_back(v);
        }
    } else {
        // Depth-first extension in edge-rank order yields the paths already
        // sorted lexicographically by edge rank.
        std::vector<EdgeId> cur;
        auto extend = [&](auto&& self, VertexId at, int depth) -> void {
            if (depth == level) {
                edges_.push_back(cur);
                src_.push_back(g.source(cur.front()));
                dst_.push_back(at);
                return;
            }
            for (EdgeId e : g.out_edges(at)) {
                cur.push_back(e);
                self(self, g.range(e), depth + 1);
                cur.pop_back();
            }
        };
        for (int r = 0; r < g.num_edges(); ++r) {
            EdgeId e = g.edge_at_rank(r);
            cur.assign(1, e);
            extend(extend, g.range(e), 1);
        }
    }
    int n = size();
    cls_.resize(n);
    idx_in_cls_.resize(n);
    by_class_.assign(num_classes(), {});
    by_source_.assign(graph_->num_vertices(), {});
    for (int p = 0; p < n; ++p) {
        cls_[p] = class_id(src_[p], dst_[p]);
        idx_in_cls_[p] = static_cast<int>(by_class_[cls_[p]].size());
        by_class_[cls_[p]].push_back(p);
        by_source_[src_[p]].push_back(p);
    }
}

std::optional<int> PathTable::find(const std::vector<EdgeId>& edges) const {
    if (static_cast<int>(edges.size()) != level_ || level_ == 0) return std::nullopt;
    auto cmp = [&](int p) {
        for (int i = 0; i < level_; ++i) {
            int ra = graph_->edge_rank(edges_[p][i]);
            int rb = graph_->edge_rank(edges[i]);
            if (ra != rb) return ra < rb ? -1 : 1;
        }
        return 0;
    };
    int lo = 0, hi = size() - 1;
    while (lo <= hi) {
        int mid = (lo + hi) / 2;
        int c = cmp(mid);
        if (c == 0) return mid;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return std::nullopt;
}

std::optional<int> PathTable::find_vertex_path(VertexId v) const {
    if (level_ != 0 || v < 0 || v >= graph_->num_vertices()) return std::nullopt;
    return v;
}

std::string PathTable::name(int path) const {
    if (level_ == 0) return graph_->vertex_name(src_[path]);
    std::string out;
    bool plain = graph_->single_char_edge_names();
    for (size_t i = 0; i < edges_[path].size(); ++i) {
        if (i && !plain) out += '.';
        out += graph_->edge_name(edges_[path][i]);
    }
    return out;
}

std::optional<int> PathTable::parse_name(const std::string& name) const {
    if (level_ == 0) {
        auto v = graph_->find_vertex(name);
        if (!v) return std::nullopt;
        return *v;
    }
    std::vector<EdgeId> es;
    if (name.find('.') != std::string::npos) {
        size_t pos = 0;
        while (pos <= name.size()) {
            size_t dot = name.find('.', pos);
            std::string tok = name.substr(pos, dot == std::string::npos ? dot : dot - pos);
            auto e = graph_->find_edge(tok);
            if (!e) return std::nullopt;
            es.push_back(*e);
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
    } else {
        for (char c : name) {
            auto e = graph_->find_edge(std::string(1, c));
            if (!e) return std::nullopt;
            es.push_back(*e);
        }
    }
    return find(es);
}

std::vector<std::uint64_t> count_paths_by_endpoints(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("path length must be >= 1");
    int n = g.num_vertices();
    std::vector<std::uint64_t> acc(n * n, 0), adj(n * n, 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) adj[g.source(e) * n + g.range(e)]++;
    acc = adj;
    for (int step = 1; step < k; ++step) {
        std::vector<std::uint64_t> next(n * n, 0);
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w) {
                if (!acc[u * n + w]) continue;
                for (int v = 0; v < n; ++v) next[u * n + v] += acc[u * n + w] * adj[w * n + v];
            }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace permweyl
