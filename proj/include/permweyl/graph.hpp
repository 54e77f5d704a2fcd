#ifndef PERMWEYL_GRAPH_HPP
#define PERMWEYL_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace permweyl {

using VertexId = int;
using EdgeId = int;

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
    std::string to_string() const;
};

/// Finite directed multigraph with named vertices and edges.
/// Declaration order fixes the vertex rank; the edge rank sorts by
/// (source rank, range rank) with declaration order breaking ties
/// among parallel edges.
class Graph {
public:
    Graph() = default;

    VertexId add_vertex(const std::string& name);
    EdgeId add_edge(const std::string& name, const std::string& source,
                    const std::string& target);

    int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
    int num_edges() const { return static_cast<int>(edge_names_.size()); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    const std::string& edge_name(EdgeId e) const { return edge_names_[e]; }
    VertexId source(EdgeId e) const { return edge_src_[e]; }
    VertexId range(EdgeId e) const { return edge_dst_[e]; }

    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    /// Rank of an edge in the base order (0 = least).
    int edge_rank(EdgeId e) const { return edge_rank_[e]; }
    EdgeId edge_at_rank(int r) const { return edges_by_rank_[r]; }
    const std::vector<EdgeId>& edges_by_rank() const { return edges_by_rank_; }

    /// Out-edges of v, sorted by edge rank.
    const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
    const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }
    /// Edges u -> v, sorted by edge rank.
    std::vector<EdgeId> edges_between(VertexId u, VertexId v) const;

    ValidationReport validate() const;

    /// True if single-character edge names allow the concatenated path syntax.
    bool single_char_edge_names() const;

    /// Line-oriented text format: "vertex NAME" / "edge NAME SRC DST"; '#' comments.
    static Graph parse_text(const std::string& text);
    static Graph parse_json(const std::string& text);
    std::string to_text() const;
    std::string to_json() const;

    /// FNV-1a hash of the canonical text form, for reproducibility headers.
    std::uint64_t content_hash() const;

private:
    void rebuild_order();

    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> edge_src_, edge_dst_;
    std::map<std::string, VertexId> vertex_by_name_;
    std::map<std::string, EdgeId> edge_by_name_;
    std::vector<int> edge_rank_;
    std::vector<EdgeId> edges_by_rank_;
    std::vector<std::vector<EdgeId>> out_, in_;
};

/// All paths of a fixed length over a graph, sorted lexicographically by
/// edge rank, with dense ids and per-(source, range) class views.
/// Level 0 is the vertex set: one empty path per vertex.
class PathTable {
public:
    PathTable(const Graph& g, int level);

    const Graph& graph() const { return *graph_; }
    int level() const { return level_; }
    int size() const { return static_cast<int>(src_.size()); }

    /// Edge sequence of a path (empty at level 0).
    const std::vector<EdgeId>& edges(int path) const { return edges_[path]; }
    VertexId source(int path) const { return src_[path]; }
    VertexId range(int path) const { return dst_[path]; }

    int class_of(int path) const { return cls_[path]; }
    int index_in_class(int path) const { return idx_in_cls_[path]; }

    int num_classes() const { return graph_->num_vertices() * graph_->num_vertices(); }
    int class_id(VertexId u, VertexId v) const { return u * graph_->num_vertices() + v; }
    VertexId class_source(int cls) const { return cls / graph_->num_vertices(); }
    VertexId class_range(int cls) const { return cls % graph_->num_vertices(); }
    const std::vector<int>& class_members(int cls) const { return by_class_[cls]; }

    /// Paths with the given source, in rank order.
    const std::vector<int>& from_source(VertexId u) const { return by_source_[u]; }

    std::optional<int> find(const std::vector<EdgeId>& edges) const;
    /// Path id for a level-0 table is the vertex id.
    std::optional<int> find_vertex_path(VertexId v) const;

    std::string name(int path) const;
    std::optional<int> parse_name(const std::string& name) const;

private:
    const Graph* graph_;
    int level_;
    std::vector<std::vector<EdgeId>> edges_;
    std::vector<VertexId> src_, dst_;
    std::vector<int> cls_, idx_in_cls_;
    std::vector<std::vector<int>> by_class_, by_source_;
};

/// |E^k_{u->v}| for every vertex pair, as a num_vertices^2 row-major matrix.
std::vector<std::uint64_t> count_paths_by_endpoints(const Graph& g, int k);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace permweyl

#endif
