#ifndef PERMWEYL_PERMGRAPH_HPP
#define PERMWEYL_PERMGRAPH_HPP

#include <memory>
#include <string>
#include <vector>

#include "permweyl/perm.hpp"

namespace permweyl {

/// Doubly labeled edge of a permutation graph: source —[first, second]→ range.
/// Vertices are path ids of the level-(k-1) table.
struct LabeledEdge {
    int src = -1;
    int dst = -1;
    EdgeId first = -1;
    EdgeId second = -1;
    bool operator==(const LabeledEdge&) const = default;
};

/// A labeled graph on the E^{k-1} vertex set with labels in E^1 x E^1.
/// A full permutation graph has exactly one edge per length-k path; a
/// partial one may carry any subset (the search's node type).
struct LabeledGraphView {
    const Graph* base = nullptr;
    std::shared_ptr<const PathTable> vertices;  // level k-1
    std::vector<LabeledEdge> edges;
    int level() const { return vertices->level() + 1; }
};

class PermutationGraph {
public:
    PermutationGraph(const PathPerm& perm, std::shared_ptr<const PathTable> level_k_minus_1);
    /// Convenience: builds the level-(k-1) table itself.
    static PermutationGraph build(const PathPerm& perm);

    int level() const { return level_; }
    const Graph& base() const { return *base_; }
    std::shared_ptr<const PathTable> vertex_table() const { return vertices_; }
    const std::vector<LabeledEdge>& edges() const { return edges_; }
    LabeledGraphView view() const { return {base_, vertices_, edges_}; }

    /// Edge for the input path eα (indexed by the path id of eα in E^k).
    const LabeledEdge& edge_for_input(int path_k) const { return edges_[path_k]; }
    std::shared_ptr<const PathTable> input_table() const { return inputs_; }

    std::string to_dot(bool ordered_names = false) const;
    std::string to_json() const;

private:
    const Graph* base_;
    int level_;
    std::shared_ptr<const PathTable> vertices_;  // E^{k-1}
    std::shared_ptr<const PathTable> inputs_;    // E^k
    std::vector<LabeledEdge> edges_;
};

/// Exact round trip of PermutationGraph::build. Throws on malformed graphs
/// with a structured violation report in the message.
PathPerm recover_permutation(const LabeledGraphView& g,
                             std::shared_ptr<const PathTable> level_k_table);
PathPerm recover_permutation(const PermutationGraph& pg);

/// Which of the four permutation-graph conditions fail and where.
struct LemmaReport {
    std::vector<std::string> failures[4];
    bool all_pass() const {
        return failures[0].empty() && failures[1].empty() && failures[2].empty() &&
               failures[3].empty();
    }
    std::string to_string() const;
};
LemmaReport check_lemma_properties(const LabeledGraphView& g);

/// Conditions for being a subgraph of some permutation graph:
/// (i) label-endpoint compatibility, (ii) at most one edge per
/// (first label, range), (iii) at most one edge per (second label, source).
bool check_subgraph_conditions(const LabeledGraphView& g);

enum class Labeling { First, Second };

/// First: no two distinct edges share (range, first label).
/// Second: no two distinct edges share (source, second label).
bool check_resolving(const LabeledGraphView& g, Labeling which);

/// Textile-system view (E_tau, E, p, q): p = (first label, source vertex),
/// q = (second label, range vertex).
struct TextileReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
TextileReport as_textile_system(const PermutationGraph& pg);

}  // namespace permweyl

#endif
