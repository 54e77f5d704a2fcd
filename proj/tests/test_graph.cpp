#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "permweyl/graph.hpp"
#include "test_util.hpp"

using namespace permweyl;
using namespace permweyl::testutil;

TEST_CASE("bowtie validates") {
    Graph g = bowtie();
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 6);
    CHECK(g.validate().valid());
}

TEST_CASE("single loop has no exit") {
    Graph g;
    g.add_vertex("v");
    g.add_edge("e", "v", "v");
    auto rep = g.validate();
    CHECK_FALSE(rep.valid());
    CHECK(rep.to_string().find("cycle without exit") != std::string::npos);
}

TEST_CASE("sink and source are reported") {
    Graph g;
    g.add_vertex("u");
    g.add_vertex("v");
    g.add_edge("e", "u", "v");
    auto rep = g.validate();
    REQUIRE_FALSE(rep.valid());
    std::string s = rep.to_string();
    CHECK(s.find("sink") != std::string::npos);
    CHECK(s.find("source") != std::string::npos);
}

TEST_CASE("bowtie path counts match 3*2^k") {
    Graph g = bowtie();
    for (int k = 1; k <= 5; ++k) {
        PathTable pt(g, k);
        CHECK(pt.size() == 3 * (1 << k));
    }
}

TEST_CASE("one vertex with two loops has the free-monoid squares") {
    Graph g = o_n(2);
    PathTable pt(g, 2);
    REQUIRE(pt.size() == 4);
    CHECK(pt.name(0) == "aa");
    CHECK(pt.name(1) == "ab");
    CHECK(pt.name(2) == "ba");
    CHECK(pt.name(3) == "bb");
}

TEST_CASE("golden-mean level 3 contains the example cycle paths") {
    Graph g = golden_mean();
    PathTable pt(g, 3);
    for (const char* name : {"111", "132", "321", "113", "323"})
        CHECK(pt.parse_name(name).has_value());
    CHECK_FALSE(pt.parse_name("131").has_value());
}

TEST_CASE("paths are strictly sorted and duplicate-free") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_valid_graph(rng, 5, 10);
        for (int k = 1; k <= 4; ++k) {
            PathTable pt(g, k);
            for (int p = 1; p < pt.size(); ++p) {
                auto rank_seq = [&](int q) {
                    std::vector<int> r;
                    for (EdgeId e : pt.edges(q)) r.push_back(g.edge_rank(e));
                    return r;
                };
                CHECK(rank_seq(p - 1) < rank_seq(p));
            }
        }
    }
}

TEST_CASE("endpoint counts equal adjacency powers") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_valid_graph(rng, 5, 10);
        int n = g.num_vertices();
        // Oracle: multiply the count matrix by hand.
        std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n, 0));
        for (EdgeId e = 0; e < g.num_edges(); ++e) a[g.source(e)][g.range(e)]++;
        auto acc = a;
        for (int k = 1; k <= 5; ++k) {
            if (k > 1) {
                std::vector<std::vector<std::uint64_t>> next(n, std::vector<std::uint64_t>(n, 0));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        for (int m = 0; m < n; ++m) next[i][j] += acc[i][m] * a[m][j];
                acc = next;
            }
            auto counts = count_paths_by_endpoints(g, k);
            std::uint64_t total = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    CHECK(counts[i * n + j] == acc[i][j]);
                    total += counts[i * n + j];
                }
            if (k <= 4) {
                PathTable pt(g, k);
                CHECK(total == static_cast<std::uint64_t>(pt.size()));
            }
        }
    }
}

TEST_CASE("path extension identity") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_valid_graph(rng, 5, 10);
        for (int k = 2; k <= 5; ++k) {
            auto ck = count_paths_by_endpoints(g, k);
            auto ck1 = count_paths_by_endpoints(g, k - 1);
            int n = g.num_vertices();
            std::uint64_t lhs = 0, rhs = 0;
            for (auto c : ck) lhs += c;
            for (EdgeId e = 0; e < g.num_edges(); ++e)
                for (int v = 0; v < n; ++v) rhs += ck1[g.range(e) * n + v];
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("bowtie class profiles per source") {
    Graph g = bowtie();
    auto profile = [&](int k) {
        auto counts = count_paths_by_endpoints(g, k);
        std::vector<std::vector<std::uint64_t>> rows(3);
        for (int u = 0; u < 3; ++u) {
            for (int v = 0; v < 3; ++v) rows[u].push_back(counts[u * 3 + v]);
            std::sort(rows[u].begin(), rows[u].end());
        }
        return rows;
    };
    for (auto& row : profile(2)) CHECK(row == std::vector<std::uint64_t>{1, 1, 2});
    for (auto& row : profile(4)) CHECK(row == std::vector<std::uint64_t>{5, 5, 6});
}

TEST_CASE("text parser rejects bad input with line numbers") {
    CHECK_THROWS_WITH_AS(Graph::parse_text("vertex a\nvertex a\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(Graph::parse_text("vertex a\nedge e a b\n"), ParseError);
    CHECK_THROWS_AS(Graph::parse_text("vertex a\nedge e a a\nedge e a a\n"), ParseError);
    Graph g = Graph::parse_text("# comment\nvertex a # inline\nedge e a a\n");
    CHECK(g.num_edges() == 1);
}

TEST_CASE("json round trip") {
    Graph g = bowtie();
    Graph h = Graph::parse_json(g.to_json());
    CHECK(h.to_text() == g.to_text());
    CHECK(h.content_hash() == g.content_hash());
}

TEST_CASE("level zero table is the vertex set") {
    Graph g = bowtie();
    PathTable pt(g, 0);
    CHECK(pt.size() == 3);
    CHECK(pt.name(1) == "v");
    CHECK(pt.source(2) == pt.range(2));
    CHECK_THROWS_AS(PathTable(g, -1), std::invalid_argument);
}

TEST_CASE("base order sorts golden-mean edges by endpoints") {
    Graph g = golden_mean();
    // 1: A->A, 3: A->B, 2: B->A
    CHECK(g.edge_rank(*g.find_edge("1")) == 0);
    CHECK(g.edge_rank(*g.find_edge("3")) == 1);
    CHECK(g.edge_rank(*g.find_edge("2")) == 2);
}
