#ifndef PERMWEYL_CODES_HPP
#define PERMWEYL_CODES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "permweyl/dynamics.hpp"

namespace permweyl {

/// Labeled-graph presentation of the graph {(x, phi(x))} of a shift
/// automorphism phi of the base edge shift, with the two label tracks
/// time-aligned. shift_offset records the accumulated k-1 textile offsets
/// that were factored out when the code was built or composed.
struct RelationCode {
    const Graph* base = nullptr;
    int n_states = 0;
    struct CEdge {
        int src, dst;
        EdgeId x, y;
        bool operator==(const CEdge&) const = default;
    };
    std::vector<CEdge> edges;
    int shift_offset = 0;

    bool empty() const { return edges.empty(); }
    std::string serialize() const;
    std::string to_json() const;
};

/// Aligned code of the automorphism induced by a first-label synchronizing
/// doubly labeled graph at the given level (permutation graph or ordered
/// permutation graph). States are the level-(k-1) paths of the graph,
/// sheared so that both tracks are aligned; the result is trimmed and
/// minimized.
RelationCode align_code(const DLGraph& g, int level);
RelationCode align_code(const PermutationGraph& pg);
RelationCode align_code(const OrderedPermutationGraph& og);

/// Restrict to states and edges lying on bi-infinite paths.
RelationCode trim(const RelationCode& c);

/// Bisimulation quotient (partition refinement on labeled out-behavior)
/// with duplicate edges removed. Language-preserving.
RelationCode minimize(const RelationCode& c);

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph of the composition second∘first (apply `first`, then `second`);
/// offsets add. Trimmed and minimized. Throws BudgetExceeded when the raw
/// product would exceed max_product_edges.
RelationCode compose_codes(const RelationCode& first, const RelationCode& second,
                           std::size_t max_product_edges = SIZE_MAX);

/// Graph of the inverse automorphism: label tracks swapped.
RelationCode transpose_code(const RelationCode& c);

/// True iff the presented relation is the diagonal {(x, x)}, i.e. the
/// underlying automorphism is the identity.
bool code_is_identity(const RelationCode& c);

/// Semantic equality of presented relations (both must be automorphism
/// graphs over the same base).
bool codes_equal(const RelationCode& a, const RelationCode& b);

/// The closed edge-words of length p over the base graph, i.e. the
/// period-p points of the edge shift, each rotation counted separately.
std::vector<std::vector<EdgeId>> periodic_points(const Graph& g, int p);

/// Evaluates the automorphism of a first-label synchronizing doubly
/// labeled graph on periodic points. The unique bi-infinite lift of a
/// periodic word is periodic; its second label, rotated by the k-1
/// offset, is the image word.
class PeriodicEvaluator {
public:
    PeriodicEvaluator(const DLGraph& g, int level);
    std::vector<EdgeId> apply(const std::vector<EdgeId>& word) const;

private:
    const Graph* base_;
    int level_;
    int nv_;
    struct TE {
        int src, dst;
        EdgeId second;
    };
    std::vector<std::vector<TE>> by_x_;                // per base edge
    std::vector<std::vector<std::uint64_t>> fwd_;      // [x][v] = dst mask
    std::vector<std::vector<std::uint64_t>> bwd_;      // [x][v] = src mask
};

/// One-shot convenience wrapper around PeriodicEvaluator.
std::vector<EdgeId> apply_to_periodic(const DLGraph& g, int level,
                                      const std::vector<EdgeId>& word);

}  // namespace permweyl

#endif
