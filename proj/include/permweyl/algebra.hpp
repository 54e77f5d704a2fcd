#ifndef PERMWEYL_ALGEBRA_HPP
#define PERMWEYL_ALGEBRA_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permweyl/codes.hpp"

namespace permweyl {

/// A path or a vertex (the empty path at that vertex).
struct Word {
    VertexId src = -1;
    std::vector<EdgeId> edges;
    VertexId dst = -1;

    bool empty() const { return edges.empty(); }
    int length() const { return static_cast<int>(edges.size()); }
    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;

    static Word vertex(VertexId v) { return {v, {}, v}; }
    static Word path(const Graph& g, std::vector<EdgeId> es);
    std::string name(const Graph& g) const;
};

/// Formal sum of S_beta S_delta S_alpha* triples.
struct SymbolicSum {
    struct Term {
        Word beta, delta, alpha;
        bool operator==(const Term&) const = default;
        auto operator<=>(const Term&) const = default;
    };
    std::vector<Term> terms;
    /// Set when the sum collapses to a single monomial S_w (the collapsed
    /// form the printer reports alongside the raw terms).
    std::optional<Word> collapsed;

    std::string render(const Graph& g) const;
    std::string to_json(const Graph& g) const;
};

/// Image of a generator S_e under the endomorphism of the permutation graph.
SymbolicSum image_of_edge(const PermutationGraph& pg, EdgeId e);
/// Image of S_gamma for a path gamma.
SymbolicSum image_of_path(const PermutationGraph& pg, const std::vector<EdgeId>& gamma);

/// Permutation of level k+l-1 inducing the composition lambda_outer ∘
/// lambda_inner (outer at level l, inner at level k).
PathPerm compose_perms(const PathPerm& outer, const PathPerm& inner);
PermutationGraph compose(const PermutationGraph& outer, const PermutationGraph& inner);

/// Exact inverse: a permutation pi with lambda_pi ∘ lambda_tau = id,
/// constructed from the synchronization-delay window; its level depends on
/// the delays and is reported by the result. Throws when pg is not an
/// automorphism (citing the failing label's cycle witness).
PathPerm inverse(const PermutationGraph& pg);

/// Minimized aligned code of the composition of two automorphism classes.
RelationCode compose_ordered(const OrderedPermutationGraph& og1,
                             const OrderedPermutationGraph& og2,
                             std::size_t max_product_edges = SIZE_MAX);

struct OrderResult {
    enum Kind { Finite, ExceedsBound, BudgetBreached } kind;
    int value = 0;           // the order when Finite
    int bound = 0;
    std::string detail;      // budget breach narrative
    /// Largest n such that every order candidate <= n has been ruled out
    /// rigorously (only meaningful for BudgetBreached).
    int ruled_out_upto = 0;
};

struct OrderOptions {
    int bound = 100;
    std::size_t state_budget = 10000000;  // max product edges per composition
    int max_periodic_points = 200000;     // total periodic points examined
    int max_period = 12;
};

/// Least n <= bound with phi^n = id for the induced shift automorphism.
/// Periodic-point orders restrict the candidates (the order is a common
/// multiple of the induced permutation orders of every Per_p); candidates
/// are then confirmed or refuted by minimized code composition.
OrderResult order_of(const OrderedPermutationGraph& og, const OrderOptions& opts = {});
OrderResult order_of(const PermutationGraph& pg, const OrderOptions& opts = {});
OrderResult order_of_code(const RelationCode& base_code, const DLGraph& eval_graph, int level,
                          const OrderOptions& opts = {});

/// Formal sums of generators T_i = sum of S_e over a partition of the edges.
struct SubalgebraReport {
    bool preserved = false;
    std::vector<std::string> rewrites;   // one rendered rewrite per generator
    std::string witness;                 // non-membership witness when not preserved
};

/// Decides whether each lambda(T_i) rewrites to a sum of words in the T_j
/// and their adjoints. generators[i] lists the edges of T_i and must
/// partition the edge set.
SubalgebraReport image_in_subalgebra(const PermutationGraph& pg,
                                     const std::vector<std::vector<EdgeId>>& generators);

}  // namespace permweyl

#endif
