#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "permweyl/search.hpp"
#include "test_util.hpp"

using namespace permweyl;
using namespace permweyl::testutil;

namespace {

std::vector<std::string> collect_autos(const Graph& g, int level, int jobs = 1) {
    SearchConfig cfg;
    cfg.level = level;
    cfg.jobs = jobs;
    std::vector<std::string> out;
    enumerate_automorphisms(g, cfg, [&](const PathPerm& p) { out.push_back(format_cycles(p)); });
    return out;
}

std::vector<std::string> collect_classes(const Graph& g, int level, int jobs = 1) {
    SearchConfig cfg;
    cfg.level = level;
    cfg.jobs = jobs;
    std::vector<std::string> out;
    enumerate_outer_classes(g, cfg,
                            [&](const OrderedPermutationGraph& og) { out.push_back(og.serialize()); });
    return out;
}

// Brute-force oracle: filter every endpoint-fixing permutation.
std::pair<std::set<std::string>, std::set<std::string>> brute_force(const Graph& g, int level) {
    auto pt = std::make_shared<const PathTable>(g, level);
    std::set<std::string> autos, classes;
    enumerate_endpoint_fixing(
        pt,
        [&](const PathPerm& p) {
            PermutationGraph pg = PermutationGraph::build(p);
            if (is_automorphism(pg)) {
                autos.insert(format_cycles(p));
                classes.insert(ordered_permutation_graph(pg).serialize());
            }
            return true;
        },
        BigInt(400000));
    return {autos, classes};
}

}  // namespace

TEST_CASE("bowtie automorphism counts for small levels") {
    Graph g = bowtie();
    CHECK(collect_autos(g, 1).size() == 1);
    CHECK(collect_autos(g, 2).size() == 2);
    CHECK(collect_autos(g, 3).size() == 32);
}

TEST_CASE("bowtie outer class counts for small levels") {
    Graph g = bowtie();
    CHECK(collect_classes(g, 1).size() == 1);
    CHECK(collect_classes(g, 2).size() == 2);
    CHECK(collect_classes(g, 3).size() == 4);
}

TEST_CASE("level-3 stream recovers the four representatives' orbits") {
    Graph g = bowtie();
    auto p3 = std::make_shared<const PathTable>(g, 3);
    auto autos = collect_autos(g, 3);
    std::set<std::string> from_search(autos.begin(), autos.end());
    CHECK(from_search.size() == 32);
    for (const char* s :
         {"Id", "(dfe, cab)", "(bde, bcb)(ede, ecb)", "(bde, bcb)(dfe, cab)(ede, ecb)"}) {
        PathPerm tau = parse_cycles(p3, s);
        CHECK(from_search.count(format_cycles(tau)) == 1);
        // The whole g_pi-orbit of each representative is in the stream.
        auto p2 = std::make_shared<const PathTable>(g, 2);
        enumerate_endpoint_fixing(p2, [&](const PathPerm& pi) {
            CHECK(from_search.count(format_cycles(apply_g_pi(tau, pi))) == 1);
            return true;
        });
    }
}

TEST_CASE("search stream is duplicate-free") {
    Graph g = bowtie();
    auto autos = collect_autos(g, 3);
    std::set<std::string> dedup(autos.begin(), autos.end());
    CHECK(dedup.size() == autos.size());
    auto classes = collect_classes(g, 3);
    std::set<std::string> cdedup(classes.begin(), classes.end());
    CHECK(cdedup.size() == classes.size());
}

TEST_CASE("o3 level 2 has 96 outer classes") {
    Graph g = o_n(3);
    CHECK(collect_classes(g, 2).size() == 96);
}

TEST_CASE("o3 level 2 automorphism count is classes times class size") {
    Graph g = o_n(3);
    auto autos = collect_autos(g, 2);
    CHECK(autos.size() == 96 * 6);  // 6 = count of level-1 endpoint-fixing permutations
}

TEST_CASE("search equals the brute-force oracle on the fixed graphs") {
    for (const Graph& g : {bowtie(), golden_mean(), o_n(2)}) {
        for (int level = 1; level <= 3; ++level) {
            if (count_endpoint_fixing(g, level) > 10000) continue;
            auto [oracle_autos, oracle_classes] = brute_force(g, level);
            auto autos = collect_autos(g, level);
            auto classes = collect_classes(g, level);
            CHECK(std::set<std::string>(autos.begin(), autos.end()) == oracle_autos);
            CHECK(std::set<std::string>(classes.begin(), classes.end()) == oracle_classes);
        }
    }
}

TEST_CASE("search equals the brute-force oracle on random graphs") {
    std::mt19937 rng(79);
    int done = 0;
    while (done < 20) {
        Graph g = random_valid_graph(rng);
        for (int level = 1; level <= 3; ++level) {
            if (count_endpoint_fixing(g, level) > 10000) continue;
            auto [oracle_autos, oracle_classes] = brute_force(g, level);
            auto autos = collect_autos(g, level);
            auto classes = collect_classes(g, level);
            CHECK(std::set<std::string>(autos.begin(), autos.end()) == oracle_autos);
            CHECK(std::set<std::string>(classes.begin(), classes.end()) == oracle_classes);
        }
        ++done;
    }
}

TEST_CASE("endomorphism mode drops the synchronization conjunct") {
    Graph g = bowtie();
    SearchConfig cfg;
    cfg.level = 2;
    cfg.mode = SearchConfig::Endomorphisms;
    std::vector<std::string> all;
    enumerate_automorphisms(g, cfg, [&](const PathPerm& p) { all.push_back(format_cycles(p)); });
    CHECK(all.size() == 8);
    std::set<std::string> dedup(all.begin(), all.end());
    CHECK(dedup.size() == 8);

    cfg.endomorphism_cap = BigInt(4);
    CHECK_THROWS_WITH_AS(enumerate_automorphisms(g, cfg, nullptr), doctest::Contains("8"),
                         std::runtime_error);
}

TEST_CASE("parallel searches produce the serial stream") {
    Graph g = bowtie();
    CHECK(collect_autos(g, 3, 3) == collect_autos(g, 3, 1));
    CHECK(collect_classes(g, 3, 4) == collect_classes(g, 3, 1));
    Graph o3 = o_n(3);
    CHECK(collect_classes(o3, 2, 3) == collect_classes(o3, 2, 1));
}

TEST_CASE("fixed-point constraints prune in-search") {
    Graph g = bowtie();
    SearchConfig cfg;
    cfg.level = 2;
    cfg.constraint = FixedPointConstraint{{*g.find_edge("c"), *g.find_edge("e"), *g.find_edge("f")}};
    std::vector<std::string> out;
    enumerate_automorphisms(g, cfg, [&](const PathPerm& p) { out.push_back(format_cycles(p)); });
    // Both level-2 automorphisms move cb, so only Id survives.
    CHECK(out == std::vector<std::string>{"Id"});

    // An empty constraint changes nothing.
    SearchConfig free_cfg;
    free_cfg.level = 2;
    free_cfg.constraint = FixedPointConstraint{{}};
    std::vector<std::string> unconstrained;
    enumerate_automorphisms(g, free_cfg,
                            [&](const PathPerm& p) { unconstrained.push_back(format_cycles(p)); });
    CHECK(unconstrained == collect_autos(g, 2));

    // Constraining every prefix leaves only the identity.
    SearchConfig all_cfg;
    all_cfg.level = 3;
    all_cfg.constraint = FixedPointConstraint{{0, 1, 2, 3, 4, 5}};
    std::vector<std::string> only_id;
    enumerate_automorphisms(g, all_cfg,
                            [&](const PathPerm& p) { only_id.push_back(format_cycles(p)); });
    CHECK(only_id == std::vector<std::string>{"Id"});
}

TEST_CASE("constrained stream is the filtered unconstrained stream") {
    Graph g = bowtie();
    SearchConfig cfg;
    cfg.level = 3;
    cfg.constraint = FixedPointConstraint{{*g.find_edge("a"), *g.find_edge("b")}};
    std::vector<std::string> constrained;
    enumerate_automorphisms(g, cfg, [&](const PathPerm& p) { constrained.push_back(format_cycles(p)); });
    auto p3 = std::make_shared<const PathTable>(g, 3);
    std::vector<std::string> filtered;
    for (const auto& s : collect_autos(g, 3)) {
        PathPerm tau = parse_cycles(p3, s);
        bool fixes = true;
        for (int p = 0; p < p3->size() && fixes; ++p) {
            EdgeId first = p3->edges(p).front();
            if ((first == *g.find_edge("a") || first == *g.find_edge("b")) && tau.apply(p) != p)
                fixes = false;
        }
        if (fixes) filtered.push_back(s);
    }
    CHECK(constrained == filtered);
}

TEST_CASE("inherited pruning soundness: prefixes of outputs stay valid") {
    Graph g = bowtie();
    SearchConfig cfg;
    cfg.level = 2;
    std::vector<OrderedPermutationGraph> ogs;
    enumerate_outer_classes(g, cfg, [&](const OrderedPermutationGraph& og) { ogs.push_back(og); });
    for (const auto& og : ogs) {
        DLGraph dl = og.as_dlgraph();
        for (size_t cut = 0; cut <= dl.edges.size(); ++cut) {
            DLGraph prefix = dl;
            prefix.edges.resize(cut);
            CHECK(is_synchronizing(prefix, Labeling::First).synchronizing);
            CHECK(is_synchronizing(prefix, Labeling::Second).synchronizing);
        }
    }
}

TEST_CASE("emitted ordered graphs agree with a from-scratch MES renumbering") {
    for (const Graph& g : {bowtie(), o_n(3)}) {
        SearchConfig cfg;
        cfg.level = 2;
        enumerate_outer_classes(g, cfg, [&](const OrderedPermutationGraph& og) {
            std::vector<int> block_of(og.num_vertices());
            for (int v = 0; v < og.num_vertices(); ++v) block_of[v] = og.block_of_vertex(v);
            OrderedPermutationGraph re = canonical_ordered_graph(og.as_dlgraph(), og.level, block_of);
            CHECK(re.serialize() == og.serialize());
        });
    }
}

TEST_CASE("quotient by the o3 edge symmetries yields 16 orbits") {
    Graph g = o_n(3);
    SearchConfig cfg;
    cfg.level = 2;
    std::vector<OrderedPermutationGraph> classes;
    enumerate_outer_classes(g, cfg, [&](const OrderedPermutationGraph& og) { classes.push_back(og); });
    REQUIRE(classes.size() == 96);
    std::vector<std::vector<EdgeId>> syms;
    for (const char* s : {"(a,b)", "(a,c)", "(b,c)", "(a,b,c)", "(a,c,b)"})
        syms.push_back(parse_edge_permutation(g, s));
    auto reps = quotient_by_graph_symmetries(classes, syms);
    CHECK(reps.size() == 16);
    // The trivial symmetry group keeps every class.
    CHECK(quotient_by_graph_symmetries(classes, {}).size() == 96);
}

TEST_CASE("bowtie lobe swap is a graph symmetry; orbits do not exceed classes") {
    Graph g = bowtie();
    auto swap = parse_edge_permutation(g, "(a,f)(b,e)(c,d)");
    SearchConfig cfg;
    cfg.level = 3;
    std::vector<OrderedPermutationGraph> classes;
    enumerate_outer_classes(g, cfg, [&](const OrderedPermutationGraph& og) { classes.push_back(og); });
    auto reps = quotient_by_graph_symmetries(classes, {swap});
    CHECK(reps.size() <= classes.size());
    CHECK(reps.size() >= 1);

    // A non-automorphism edge permutation is rejected.
    auto bad = parse_edge_permutation(g, "(a,f)");
    CHECK_THROWS_AS(act_by_symmetry(ordered_permutation_graph(PermutationGraph::build(
                                        PathPerm(std::make_shared<const PathTable>(g, 2)))),
                                    bad),
                    std::runtime_error);
}

TEST_CASE("budget exhaustion raises a budget error") {
    Graph g = bowtie();
    SearchConfig cfg;
    cfg.level = 4;
    cfg.budget_seconds = 0.0;
    CHECK_THROWS_AS(enumerate_outer_classes(g, cfg, nullptr), BudgetError);
}
