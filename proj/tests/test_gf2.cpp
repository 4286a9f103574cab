#include <vector>

#include "doctest.h"
#include "pmc/families.hpp"
#include "pmc/gf2.hpp"
#include "test_util.hpp"

using namespace pmc;
using pmc_test::random_graph;

TEST_CASE("gf2 rank basics") {
    std::vector<BitRow> rows;
    CHECK(gf2_rank(rows) == 0);
    for (int i = 0; i < 4; ++i) {
        BitRow r(4);
        r.set(i);
        rows.push_back(r);
    }
    CHECK(gf2_rank(rows) == 4);
    rows.push_back(rows[0] ^ rows[2]); // dependent
    CHECK(gf2_rank(rows) == 4);
    rows.assign(3, BitRow(8)); // all zero
    CHECK(gf2_rank(rows) == 0);
    BitRow dup(6);
    dup.set(1);
    dup.set(4);
    CHECK(gf2_rank({dup, dup, dup}) == 1);
}

TEST_CASE("cut rank on fixed graphs") {
    Graph c4 = Graph::from_edges(4, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {0, 3}});
    std::vector<VertexId> opposite{0, 2};
    CHECK(cut_rank(c4, opposite) == 1);
    std::vector<VertexId> adjacent{0, 1};
    CHECK(cut_rank(c4, adjacent) == 2);

    Graph p3 = path_graph(3);
    std::vector<VertexId> endpoint{0};
    CHECK(cut_rank(p3, endpoint) == 1);

    Graph k5 = complete_graph(5);
    std::vector<VertexId> s{1, 3};
    CHECK(cut_rank(k5, s) == 1);
    std::vector<VertexId> all{0, 1, 2, 3, 4};
    CHECK(cut_rank(k5, all) == 0);
}

TEST_CASE("cut rank is symmetric and submodular") {
    std::mt19937_64 rng(21);
    for (int seed = 0; seed < 30; ++seed) {
        std::size_t n = 3 + rand_below(rng, 6);
        Graph g = random_graph(rng, n);
        BitRow x(n), y(n);
        for (VertexId v = 0; v < n; ++v) {
            if (rand_below(rng, 2)) x.set(v);
            if (rand_below(rng, 2)) y.set(v);
        }
        BitRow xc = g.active_bits();
        xc ^= x;
        CHECK(cut_rank(g, x) == cut_rank(g, xc));
        CHECK(cut_rank(g, x) + cut_rank(g, y) >= cut_rank(g, x | y) + cut_rank(g, x & y));
    }
}

TEST_CASE("cut rank is invariant under pivoting") {
    std::mt19937_64 rng(22);
    for (int seed = 0; seed < 30; ++seed) {
        std::size_t n = 3 + rand_below(rng, 6);
        Graph g = random_graph(rng, n);
        auto edges = g.edges();
        if (edges.empty()) continue;
        auto [u, v] = edges[rand_below(rng, edges.size())];
        Graph p = pivot(g, u, v);
        BitRow s(n);
        for (VertexId w = 0; w < n; ++w)
            if (rand_below(rng, 2)) s.set(w);
        CHECK(cut_rank(g, s) == cut_rank(p, s));
    }
}
