#ifndef PERMWEYL_TEST_UTIL_HPP
#define PERMWEYL_TEST_UTIL_HPP

#include <fstream>
#include <random>
#include <sstream>

#include "permweyl/graph.hpp"

namespace permweyl::testutil {

inline Graph load_graph(const std::string& name) {
    std::ifstream in(std::string(PERMWEYL_TESTDATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return Graph::parse_text(ss.str());
}

inline Graph bowtie() { return load_graph("bowtie.graph"); }
inline Graph golden_mean() { return load_graph("golden.graph"); }
inline Graph o_n(int n) {
    Graph g;
    g.add_vertex("v");
    for (int i = 0; i < n; ++i) g.add_edge(std::string(1, static_cast<char>('a' + i)), "v", "v");
    return g;
}

/// Random valid graph: every vertex emits and receives an edge and no
/// cycle lacks an exit. Rejection sampling keeps the distribution simple.
inline Graph random_valid_graph(std::mt19937& rng, int max_vertices = 4, int max_edges = 8) {
    for (;;) {
        int nv = std::uniform_int_distribution<int>(1, max_vertices)(rng);
        int extra = std::uniform_int_distribution<int>(0, max_edges - nv)(rng);
        Graph g;
        for (int v = 0; v < nv; ++v) g.add_vertex("v" + std::to_string(v));
        auto vname = [&](int v) { return "v" + std::to_string(v); };
        std::uniform_int_distribution<int> pick(0, nv - 1);
        int id = 0;
        // One outgoing edge per vertex, then extras.
        for (int v = 0; v < nv; ++v)
            g.add_edge("e" + std::to_string(id++), vname(v), vname(pick(rng)));
        for (int i = 0; i < extra; ++i)
            g.add_edge("e" + std::to_string(id++), vname(pick(rng)), vname(pick(rng)));
        if (g.validate().valid()) return g;
    }
}

}  // namespace permweyl::testutil

#endif
