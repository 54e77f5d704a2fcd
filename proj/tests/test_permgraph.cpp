#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "permweyl/permgraph.hpp"
#include "test_util.hpp"

using namespace permweyl;
using namespace permweyl::testutil;

namespace {

PathPerm random_perm(std::shared_ptr<const PathTable> pt, std::mt19937& rng) {
    std::vector<std::vector<int>> maps(pt->num_classes());
    for (int c = 0; c < pt->num_classes(); ++c) {
        maps[c].resize(pt->class_members(c).size());
        std::iota(maps[c].begin(), maps[c].end(), 0);
        std::shuffle(maps[c].begin(), maps[c].end(), rng);
    }
    return PathPerm(pt, std::move(maps));
}

struct EdgeSpec {
    std::string src, dst, first, second;
};

bool has_edge(const PermutationGraph& pg, const EdgeSpec& spec) {
    const auto& vt = *pg.vertex_table();
    for (const auto& e : pg.edges())
        if (vt.name(e.src) == spec.src && vt.name(e.dst) == spec.dst &&
            pg.base().edge_name(e.first) == spec.first &&
            pg.base().edge_name(e.second) == spec.second)
            return true;
    return false;
}

}  // namespace

TEST_CASE("golden-mean permutation graph matches the worked example") {
    Graph g = golden_mean();
    auto p3 = std::make_shared<const PathTable>(g, 3);
    PathPerm tau = parse_cycles(p3, "(111,132,321)(113,323)");
    PermutationGraph pg = PermutationGraph::build(tau);
    REQUIRE(pg.edges().size() == 8);
    // Every edge, read off Definition-style from the permutation by hand.
    for (const EdgeSpec& spec : std::vector<EdgeSpec>{{"13", "11", "1", "2"},
                                                      {"32", "32", "1", "1"},
                                                      {"11", "21", "3", "1"},
                                                      {"32", "13", "1", "3"},
                                                      {"11", "23", "3", "3"},
                                                      {"21", "11", "2", "1"},
                                                      {"21", "13", "2", "3"},
                                                      {"23", "32", "2", "2"}})
        CHECK(has_edge(pg, spec));
    CHECK(check_lemma_properties(pg.view()).all_pass());
}

TEST_CASE("identity permutation graph is the higher block presentation") {
    Graph g = bowtie();
    for (int k : {1, 2, 3}) {
        auto pk = std::make_shared<const PathTable>(g, k);
        PermutationGraph pg = PermutationGraph::build(PathPerm(pk));
        for (const auto& e : pg.edges()) {
            // e.alpha = beta.f exactly
            std::vector<EdgeId> in{e.first};
            const auto& a = pg.vertex_table()->edges(e.dst);
            in.insert(in.end(), a.begin(), a.end());
            std::vector<EdgeId> out(pg.vertex_table()->edges(e.src));
            out.push_back(e.second);
            CHECK(in == out);
        }
    }
}

TEST_CASE("bowtie tau_21 permutation graph") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p2, "(de,cb)"));
    CHECK(pg.edges().size() == 12);
    CHECK(has_edge(pg, {"c", "e", "d", "b"}));  // input de: tau(de) = cb
    CHECK(has_edge(pg, {"d", "b", "c", "e"}));  // input cb: tau(cb) = de
    CHECK(check_lemma_properties(pg.view()).all_pass());
}

TEST_CASE("recover round trips on paper representatives") {
    Graph g = bowtie();
    auto p3 = std::make_shared<const PathTable>(g, 3);
    for (const char* s : {"Id", "(dfe, cab)", "(bde, bcb)(ede, ecb)",
                          "(bde, bcb)(dfe, cab)(ede, ecb)"}) {
        PathPerm tau = parse_cycles(p3, s);
        CHECK(recover_permutation(PermutationGraph::build(tau)) == tau);
    }
}

TEST_CASE("recover round trips on random permutations over random graphs") {
    std::mt19937 rng(53);
    int done = 0;
    while (done < 200) {
        Graph g = random_valid_graph(rng);
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        auto pt = std::make_shared<const PathTable>(g, k);
        PathPerm tau = random_perm(pt, rng);
        PermutationGraph pg = PermutationGraph::build(tau);
        CHECK(check_lemma_properties(pg.view()).all_pass());
        CHECK(recover_permutation(pg) == tau);
        ++done;
    }
}

TEST_CASE("deleting an edge breaks the existence conditions at one site each") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p2, "(de,cb)"));
    LabeledGraphView view = pg.view();
    view.edges.erase(view.edges.begin() + 3);
    auto rep = check_lemma_properties(view);
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.failures[1].size() == 1);
    CHECK(rep.failures[3].size() == 1);
    CHECK(rep.failures[0].empty());
    CHECK(rep.failures[2].empty());
}

TEST_CASE("swapping second labels between class edges breaks condition 3 or 4") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p2, "(de,cb)"));
    LabeledGraphView view = pg.view();
    // Find two edges with distinct second labels and swap them.
    for (size_t i = 0; i < view.edges.size(); ++i)
        for (size_t j = i + 1; j < view.edges.size(); ++j)
            if (view.edges[i].second != view.edges[j].second) {
                auto mutated = view;
                std::swap(mutated.edges[i].second, mutated.edges[j].second);
                auto rep = check_lemma_properties(mutated);
                CHECK_FALSE(rep.all_pass());
                CHECK((!rep.failures[2].empty() || !rep.failures[3].empty()));
                goto done;
            }
done:;
}

TEST_CASE("subgraph conditions accept subsets and reject clashes") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p2, "(de,cb)"));
    LabeledGraphView view = pg.view();

    LabeledGraphView empty = view;
    empty.edges.clear();
    CHECK(check_subgraph_conditions(empty));

    std::mt19937 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        LabeledGraphView sub = view;
        sub.edges.clear();
        for (const auto& e : view.edges)
            if (rng() & 1) sub.edges.push_back(e);
        CHECK(check_subgraph_conditions(sub));
    }

    // Two edges with the same first label into the same range.
    LabeledGraphView clash = view;
    clash.edges.assign(2, view.edges[0]);
    CHECK_FALSE(check_subgraph_conditions(clash));
}

TEST_CASE("resolving holds for permutation graphs and fails on duplicates") {
    Graph g = golden_mean();
    auto p3 = std::make_shared<const PathTable>(g, 3);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p3, "(111,132,321)(113,323)"));
    CHECK(check_resolving(pg.view(), Labeling::First));
    CHECK(check_resolving(pg.view(), Labeling::Second));

    LabeledGraphView dup = pg.view();
    dup.edges.push_back(dup.edges[0]);
    CHECK_FALSE(check_resolving(dup, Labeling::First));
    CHECK_FALSE(check_resolving(dup, Labeling::Second));
    CHECK(check_resolving(LabeledGraphView{dup.base, dup.vertices, {}}, Labeling::First));
}

TEST_CASE("textile view is LR on random permutation graphs") {
    std::mt19937 rng(61);
    int done = 0;
    while (done < 100) {
        Graph g = random_valid_graph(rng);
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        auto pt = std::make_shared<const PathTable>(g, k);
        PermutationGraph pg = PermutationGraph::build(random_perm(pt, rng));
        CHECK(as_textile_system(pg).ok());
        ++done;
    }
}

TEST_CASE("language equality of the three presentations up to length 6") {
    Graph g = golden_mean();
    auto p3 = std::make_shared<const PathTable>(g, 3);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p3, "(111,132,321)(113,323)"));
    std::vector<std::vector<const LabeledEdge*>> out(pg.vertex_table()->size());
    for (const auto& e : pg.edges()) out[e.src].push_back(&e);
    for (int n = 1; n <= 6; ++n) {
        std::set<std::vector<EdgeId>> base_words, first_words, second_words;
        PathTable pn(g, n);
        for (int p = 0; p < pn.size(); ++p) base_words.insert(pn.edges(p));
        std::vector<EdgeId> w1, w2;
        auto rec = [&](auto&& self, int at, int depth) -> void {
            if (depth == n) {
                first_words.insert(w1);
                second_words.insert(w2);
                return;
            }
            for (const auto* e : out[at]) {
                w1.push_back(e->first);
                w2.push_back(e->second);
                self(self, e->dst, depth + 1);
                w1.pop_back();
                w2.pop_back();
            }
        };
        for (int v = 0; v < pg.vertex_table()->size(); ++v) rec(rec, v, 0);
        CHECK(first_words == base_words);
        CHECK(second_words == base_words);
    }
}

TEST_CASE("dot and json outputs mention the double labels") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PermutationGraph pg = PermutationGraph::build(parse_cycles(p2, "(de,cb)"));
    CHECK(pg.to_dot().find("d/b") != std::string::npos);
    CHECK(pg.to_json().find("\"first\":\"d\"") != std::string::npos);
}
