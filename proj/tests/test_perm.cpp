#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "permweyl/perm.hpp"
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

}  // namespace

TEST_CASE("bowtie endpoint-fixing counts") {
    Graph g = bowtie();
    CHECK(count_endpoint_fixing(g, 1) == 1);
    CHECK(count_endpoint_fixing(g, 2) == 8);
    CHECK(count_endpoint_fixing(g, 3) == 373248);
    // (5!*5!*6!)^3, printed exactly
    CHECK(count_endpoint_fixing(g, 4).str() == "1114512556032000000000");
    BigInt five = count_endpoint_fixing(g, 5);
    auto fact = [](int n) {
        BigInt f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    BigInt expect = fact(10) * fact(11) * fact(11);
    expect = expect * expect * expect;
    CHECK(five == expect);
}

TEST_CASE("all-singleton classes give the trivial count") {
    Graph g = golden_mean();
    CHECK(count_endpoint_fixing(g, 1) == 1);  // 1:A->A, 3:A->B, 2:B->A all alone
}

TEST_CASE("enumeration matches the count and starts at the identity") {
    Graph g = bowtie();
    auto pt = std::make_shared<const PathTable>(g, 2);
    int seen = 0;
    bool first = true;
    enumerate_endpoint_fixing(pt, [&](const PathPerm& p) {
        if (first) {
            CHECK(p.is_identity());
            first = false;
        }
        ++seen;
        return true;
    });
    CHECK(seen == 8);
}

TEST_CASE("enumeration length equals the count on random graphs") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 8) {
        Graph g = random_valid_graph(rng);
        for (int k = 1; k <= 3; ++k) {
            BigInt total = count_endpoint_fixing(g, k);
            if (total > 10000) continue;
            auto pt = std::make_shared<const PathTable>(g, k);
            std::uint64_t seen = 0;
            std::set<std::string> reprs;
            enumerate_endpoint_fixing(pt, [&](const PathPerm& p) {
                ++seen;
                reprs.insert(format_cycles(p));
                return true;
            });
            CHECK(BigInt(seen) == total);
            CHECK(BigInt(reprs.size()) == total);  // no duplicates
            ++done;
        }
    }
}

TEST_CASE("cap exceeded reports the exact count") {
    Graph g = bowtie();
    auto pt = std::make_shared<const PathTable>(g, 3);
    CHECK_THROWS_WITH_AS(
        enumerate_endpoint_fixing(
            pt, [](const PathPerm&) { return true; }, BigInt(1000)),
        doctest::Contains("373248"), std::runtime_error);
}

TEST_CASE("paper cycle strings parse") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PathPerm tau21 = parse_cycles(p2, "(de, cb)");
    int de = *p2->parse_name("de");
    int cb = *p2->parse_name("cb");
    CHECK(tau21.apply(de) == cb);
    CHECK(tau21.apply(cb) == de);
    CHECK(p2->source(de) == p2->source(cb));
    CHECK(p2->range(de) == p2->range(cb));

    auto p4 = std::make_shared<const PathTable>(g, 4);
    PathPerm tau4 = parse_cycles(p4, "(abde,bdfe,bcab)(ecab,edfe)");
    CHECK(tau4.apply(*p4->parse_name("abde")) == *p4->parse_name("bdfe"));
    CHECK(tau4.apply(*p4->parse_name("bcab")) == *p4->parse_name("abde"));
    CHECK(tau4.apply(*p4->parse_name("edfe")) == *p4->parse_name("ecab"));

    CHECK(parse_cycles(p2, "Id").is_identity());
    CHECK(parse_cycles(p2, "  Id  ").is_identity());
}

TEST_CASE("cycle parser rejects bad input with the offending path") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    CHECK_THROWS_WITH_AS(parse_cycles(p2, "(de, xx)"), doctest::Contains("xx"), CycleParseError);
    CHECK_THROWS_WITH_AS(parse_cycles(p2, "(de, cb)(de, aa)"), doctest::Contains("de"),
                         CycleParseError);
    // bd: u->w and de: v->v live in different classes
    CHECK_THROWS_WITH_AS(parse_cycles(p2, "(de, bd)"), doctest::Contains("bd"), CycleParseError);
    CHECK_THROWS_AS(parse_cycles(p2, "(de)"), CycleParseError);
    CHECK_THROWS_AS(parse_cycles(p2, "(de, cb"), CycleParseError);
}

TEST_CASE("dotted path names parse when edge names are long") {
    Graph g;
    g.add_vertex("v");
    g.add_edge("e1", "v", "v");
    g.add_edge("e2", "v", "v");
    auto pt = std::make_shared<const PathTable>(g, 2);
    PathPerm p = parse_cycles(pt, "(e1.e2, e2.e1)");
    CHECK(p.apply(*pt->parse_name("e1.e2")) == *pt->parse_name("e2.e1"));
    CHECK(format_cycles(p) == "(e1.e2,e2.e1)");
}

TEST_CASE("format emits cycles by minimal path rank and omits fixed points") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PathPerm p = parse_cycles(p2, "(de, cb)");
    CHECK(format_cycles(p) == "(cb,de)");
    CHECK(format_cycles(PathPerm(p2)) == "Id");
}

TEST_CASE("parse-format round trip on random permutations") {
    std::mt19937 rng(37);
    for (const Graph& g : {bowtie(), golden_mean(), o_n(3)}) {
        for (int k : {1, 2, 3}) {
            auto pt = std::make_shared<const PathTable>(g, k);
            for (int i = 0; i < 34; ++i) {
                PathPerm p = random_perm(pt, rng);
                CHECK(parse_cycles(pt, format_cycles(p)) == p);
                CHECK(perm_from_json(pt, perm_to_json(p)) == p);
            }
        }
    }
}

TEST_CASE("inverse composes to the identity map") {
    std::mt19937 rng(41);
    Graph g = bowtie();
    auto pt = std::make_shared<const PathTable>(g, 3);
    for (int i = 0; i < 25; ++i) {
        PathPerm p = random_perm(pt, rng);
        PathPerm q = p.inverse();
        for (int path = 0; path < pt->size(); ++path) {
            CHECK(q.apply(p.apply(path)) == path);
            CHECK(p.apply_inverse(path) == q.apply(path));
        }
    }
}

TEST_CASE("json form carries the level") {
    Graph g = bowtie();
    auto p2 = std::make_shared<const PathTable>(g, 2);
    PathPerm p = parse_cycles(p2, "(de, cb)");
    CHECK(perm_to_json(p).find("\"level\":2") != std::string::npos);
    CHECK_THROWS_AS(perm_from_json(p2, "{\"level\":3,\"cycles\":[]}"), CycleParseError);
}
