#ifndef PERMWEYL_DYNAMICS_HPP
#define PERMWEYL_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "permweyl/permgraph.hpp"

namespace permweyl {

/// Doubly labeled graph over anonymous vertices 0..n-1; the common input
/// of the synchronization and ordering machinery.
struct DLGraph {
    const Graph* base = nullptr;
    int n_vertices = 0;
    std::vector<LabeledEdge> edges;

    static DLGraph of(const LabeledGraphView& v) {
        return {v.base, v.vertices->size(), v.edges};
    }
    static DLGraph of(const PermutationGraph& pg) { return of(pg.view()); }
};

/// Two distinct equal-labeled cycles witnessing a synchronization failure;
/// each is a closed sequence of indices into the checked graph's edge list.
struct CycleWitness {
    std::vector<int> cycle1, cycle2;
};

struct SyncResult {
    bool synchronizing = false;
    std::optional<CycleWitness> witness;  // set when not synchronizing
};

/// Decides left-synchronizing (first label) / right-synchronizing (second)
/// via acyclicity of the off-diagonal pair graph. Requires the matching
/// resolving property; throws otherwise, naming the clashing edges.
SyncResult is_synchronizing(const DLGraph& g, Labeling which);

/// Least m such that equal labels on length-m paths force equal source
/// (first) / range (second). Throws when not synchronizing.
int synchronization_delay(const DLGraph& g, Labeling which);

bool is_diagonal_automorphism(const PermutationGraph& pg);
bool is_automorphism(const PermutationGraph& pg);

/// Finite-window image under the induced one-sided shift endomorphism:
/// the source vertex beta followed by the guaranteed-determined prefix of
/// the second label common to every lift of the word.
struct OneSidedImage {
    std::vector<EdgeId> image;  // beta's edges, then the determined prefix
    int determined_length = 0;  // = image.size()
};
OneSidedImage one_sided_image(const PermutationGraph& pg, const std::vector<EdgeId>& word);

/// Token of a minimal emitted sequence: (first label e, range of second label).
struct MesToken {
    EdgeId edge;
    VertexId vertex;
    bool operator==(const MesToken&) const = default;
};

/// Canonical eventually-periodic form: shortest preperiod, shortest period.
struct MinimalEmittedSequence {
    std::vector<MesToken> preperiod;
    std::vector<MesToken> period;
    MesToken at(size_t i) const {
        return i < preperiod.size() ? preperiod[i]
                                    : period[(i - preperiod.size()) % period.size()];
    }
    bool operator==(const MinimalEmittedSequence&) const = default;
    std::string to_string(const Graph& base) const;
};

/// Lexicographic comparison of the infinite sequences (exact).
int compare_mes(const Graph& base, const MinimalEmittedSequence& a,
                const MinimalEmittedSequence& b);

/// Minimal emitted sequence of a vertex of a first-label synchronizing
/// labeled graph. Every vertex must emit at least one edge.
MinimalEmittedSequence minimal_emitted_sequence(const DLGraph& g, int vertex);
MinimalEmittedSequence minimal_emitted_sequence(const PermutationGraph& pg, int vertex);

/// Class-canonical relabeling: one anonymous block per (source, range)
/// vertex pair, vertices numbered by MES rank inside their block, edges
/// numbered globally by the (first label, range-of-second, MES-of-range)
/// order.
class OrderedPermutationGraph {
public:
    struct OEdge {
        int src_block, src_index;
        int dst_block, dst_index;
        EdgeId first, second;
        bool operator==(const OEdge&) const = default;
    };

    int level = 0;
    const Graph* base = nullptr;
    std::vector<int> block_sizes;  // indexed by u*V+v
    std::vector<OEdge> edges;      // in MES edge order

    bool operator==(const OrderedPermutationGraph& o) const {
        return level == o.level && block_sizes == o.block_sizes && edges == o.edges;
    }
    /// Canonical byte-stable serialization; ordered-graph equality is byte
    /// equality of this form.
    std::string serialize() const;
    std::string to_json() const;
    std::string to_dot() const;
    std::string symbol_name(int block, int index) const;

    int num_vertices() const;
    int vertex_id(int block, int index) const;
    int block_of_vertex(int v) const;
    int index_of_vertex(int v) const;

    /// The same structure as an anonymous doubly labeled graph.
    DLGraph as_dlgraph() const;

    /// One representative endpoint-fixing permutation of the class: assigns
    /// block symbol i to the i-th path of the matching (u, v) class.
    PathPerm representative() const;
};

OrderedPermutationGraph ordered_permutation_graph(const PermutationGraph& pg);

/// Renumber an anonymous block-structured labeled graph by its own MES
/// data (used to recheck search output and to act by base-graph
/// symmetries). block_of[v] must give the (u*V+v)-style block of vertex v.
OrderedPermutationGraph canonical_ordered_graph(const DLGraph& g, int level,
                                                const std::vector<int>& block_of);

bool shift_space_equivalent(const PermutationGraph& a, const PermutationGraph& b);

/// Vertex relabeling action: the level-k permutation whose permutation
/// graph is pg(tau) with vertices renamed by pi (pi endpoint-fixing at
/// level k-1, k >= 2).
PathPerm apply_g_pi(const PathPerm& tau, const PathPerm& pi);

}  // namespace permweyl

#endif
