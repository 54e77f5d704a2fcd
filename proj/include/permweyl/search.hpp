#ifndef PERMWEYL_SEARCH_HPP
#define PERMWEYL_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "permweyl/dynamics.hpp"

namespace permweyl {

/// Prune to permutations fixing every path whose first edge lies in the set.
struct FixedPointConstraint {
    std::vector<EdgeId> prefixes;
};

/// Prune to permutations whose generator images rewrite to sums of
/// level-length words in the generator groups: the group type of the image
/// word beta.f must determine the generator group of the input edge and
/// the type of the range path. Necessary for any such rewriting, so no
/// valid candidate is lost; emitted candidates still need the exact
/// image_in_subalgebra filter.
struct SubalgebraConstraint {
    std::vector<std::vector<EdgeId>> groups;
};

struct SearchConfig {
    int level = 1;
    enum Mode { Automorphisms, OuterClasses, Endomorphisms } mode = Automorphisms;
    std::optional<FixedPointConstraint> constraint;
    std::optional<SubalgebraConstraint> subalgebra;
    int jobs = 1;
    std::optional<double> budget_seconds;
    BigInt endomorphism_cap = BigInt(10000000);
    /// Progress sink, called roughly once per second with nodes expanded.
    std::function<void(std::uint64_t)> progress;
};

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t emitted = 0;
};

struct BudgetError : std::runtime_error {
    std::uint64_t nodes_expanded;
    BudgetError(const std::string& what, std::uint64_t nodes)
        : std::runtime_error(what), nodes_expanded(nodes) {}
};

/// Every level-k permutative automorphism (or endomorphism, per mode),
/// emitted exactly once in a deterministic order independent of the worker
/// count. The callback may be null for count-only runs.
SearchStats enumerate_automorphisms(const Graph& g, const SearchConfig& config,
                                    const std::function<void(const PathPerm&)>& emit);

/// Every shift-space equivalence class of level-k permutative
/// automorphisms, as ordered permutation graphs, each exactly once.
SearchStats enumerate_outer_classes(const Graph& g, const SearchConfig& config,
                                    const std::function<void(const OrderedPermutationGraph&)>& emit);

/// Edge bijection of the base graph in cycle notation on edge names, e.g.
/// "(a,f)(b,e)(c,d)" or "Id"; the image is indexed by edge id. Incidence
/// preservation is checked where the permutation is used.
std::vector<EdgeId> parse_edge_permutation(const Graph& g, const std::string& cycles);

/// Orbit representatives of ordered permutation graphs under base-graph
/// symmetries (edge bijections preserving incidences). Returns indices
/// into `classes`, one per orbit, in first-seen order.
std::vector<int> quotient_by_graph_symmetries(const std::vector<OrderedPermutationGraph>& classes,
                                              const std::vector<std::vector<EdgeId>>& symmetries);

/// The ordered graph obtained by post-composing the class with the shift
/// automorphism of a base-graph symmetry (second labels relabeled, blocks
/// moved, then renumbered canonically).
OrderedPermutationGraph act_by_symmetry(const OrderedPermutationGraph& og,
                                        const std::vector<EdgeId>& edge_map);

}  // namespace permweyl

#endif
