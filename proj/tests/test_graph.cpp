#include <algorithm>
#include <vector>

#include "doctest.h"
#include "pmc/families.hpp"
#include "pmc/graph.hpp"
#include "test_util.hpp"

using namespace pmc;
using pmc_test::random_graph;

namespace {
std::vector<std::pair<VertexId, VertexId>> sorted_edges(const Graph& g) {
    auto e = g.edges();
    std::sort(e.begin(), e.end());
    return e;
}
} // namespace

TEST_CASE("basic edge bookkeeping") {
    Graph g(4);
    CHECK(g.capacity() == 4);
    CHECK(g.num_active() == 4);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    CHECK(g.has_edge(1, 0));
    CHECK(g.degree(1) == 2);
    CHECK(g.num_edges() == 2);
    g.toggle_edge(0, 1);
    CHECK(!g.has_edge(0, 1));
    g.toggle_edge(0, 1);
    g.remove_edge(1, 2);
    CHECK(sorted_edges(g) == std::vector<std::pair<VertexId, VertexId>>{{0, 1}});
    CHECK(g.neighbors(0) == std::vector<VertexId>{1});
    CHECK_THROWS_AS(g.add_edge(0, 0), Error);
    CHECK_THROWS_AS(g.add_edge(0, 7), Error);
}

TEST_CASE("delete masks the vertex everywhere") {
    Graph g = path_graph(4);
    g.apply_delete(1);
    CHECK(!g.is_active(1));
    CHECK(g.num_active() == 3);
    CHECK(g.degree(0) == 0);
    CHECK(g.degree(2) == 1);
    CHECK(sorted_edges(g) == std::vector<std::pair<VertexId, VertexId>>{{2, 3}});
    CHECK_THROWS_AS(g.apply_delete(1), Error);
    CHECK_THROWS_AS((void)g.degree(1), Error);
}

TEST_CASE("pivot on P3 ends") {
    Graph g = path_graph(3);
    Graph p = pivot(g, 1, 2);
    CHECK(sorted_edges(p) == std::vector<std::pair<VertexId, VertexId>>{{0, 2}, {1, 2}});
}

TEST_CASE("pivot on C4 edge") {
    Graph c4 = Graph::from_edges(4, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Graph p = pivot(c4, 0, 1);
    CHECK(sorted_edges(p) ==
          std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {1, 3}});
}

TEST_CASE("pivot requires an edge") {
    Graph g = path_graph(3);
    CHECK_THROWS_AS(pivot(g, 0, 2), Error);
    CHECK_THROWS_AS(pivot(g, 0, 0), Error);
}

TEST_CASE("pivot algebra on random graphs") {
    std::mt19937_64 rng(7);
    for (int seed = 0; seed < 40; ++seed) {
        std::size_t n = 2 + rand_below(rng, 9);
        Graph g = random_graph(rng, n);
        for (auto [u, v] : g.edges()) {
            Graph a = pivot(g, u, v);
            CHECK(a == pivot(g, v, u));
            CHECK(pivot(a, u, v) == g);
            CHECK(a == pivot_by_local_complements(g, u, v));
            CHECK(pivot_by_local_complements(g, u, v) ==
                  pivot_by_local_complements(g, v, u));
        }
    }
}

TEST_CASE("local complement is an involution") {
    std::mt19937_64 rng(11);
    for (int seed = 0; seed < 30; ++seed) {
        Graph g = random_graph(rng, 2 + rand_below(rng, 8));
        for (VertexId v : g.vertices()) CHECK(local_complement(local_complement(g, v), v) == g);
    }
}

TEST_CASE("shorten P5 middle") {
    Graph g = path_graph(5);
    Graph s = shorten_degree_two(g, 2, 3);
    CHECK(s.num_active() == 3);
    CHECK(sorted_edges(s) == std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 4}});
}

TEST_CASE("shorten P3 collapses to one vertex") {
    Graph g = path_graph(3);
    Graph s = shorten_degree_two(g, 1, 2);
    CHECK(s.num_active() == 1);
    CHECK(s.is_active(0));
    CHECK(s.num_edges() == 0);
}

TEST_CASE("shorten rejects wrong degrees") {
    Graph g = path_graph(4);
    CHECK_THROWS_AS(shorten_degree_two(g, 0, 1), Error); // deg(0) = 1
    Graph k = complete_graph(4);
    CHECK_THROWS_AS(shorten_degree_two(k, 0, 1), Error); // deg(0) = 3
}

TEST_CASE("complement of P4") {
    Graph c = complement(path_graph(4));
    CHECK(sorted_edges(c) ==
          std::vector<std::pair<VertexId, VertexId>>{{0, 2}, {0, 3}, {1, 3}});
    CHECK(complement(c) == path_graph(4));
}

TEST_CASE("induced subgraph and disjoint union") {
    Graph g = path_graph(5);
    std::vector<VertexId> keep{0, 1, 3};
    Graph h = induced_subgraph(g, keep);
    CHECK(h.num_active() == 3);
    CHECK(sorted_edges(h) == std::vector<std::pair<VertexId, VertexId>>{{0, 1}});

    Graph u = disjoint_union(path_graph(2), path_graph(3));
    CHECK(u.capacity() == 5);
    CHECK(sorted_edges(u) ==
          std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {2, 3}, {3, 4}});
}

TEST_CASE("path recognition and order") {
    CHECK(is_path(path_graph(1)));
    CHECK(is_path(path_graph(6)));
    CHECK(*path_order(path_graph(6)) == std::vector<VertexId>{0, 1, 2, 3, 4, 5});
    Graph c4 = Graph::from_edges(4, std::vector<std::pair<VertexId, VertexId>>{
                                        {0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(!is_path(c4));
    CHECK(!path_order(c4).has_value());
    Graph two(2); // disconnected
    CHECK(!is_path(two));
    // order starts at the lexicographically smaller endpoint
    Graph g = Graph::from_edges(4, std::vector<std::pair<VertexId, VertexId>>{
                                       {3, 1}, {1, 0}, {0, 2}});
    CHECK(*path_order(g) == std::vector<VertexId>{2, 0, 1, 3});
    CHECK(is_complement_of_path(complement(path_graph(5))));
    CHECK(!is_complement_of_path(path_graph(5)));
}

TEST_CASE("text round trip with labels and sparse ids") {
    Graph g = grid(2, 2);
    g.apply_delete(2);
    std::string text = g.to_text();
    Graph back = Graph::from_text(text);
    CHECK(back == g);
    CHECK(back.label(3) == RowCol{2, 2});
    CHECK(back.label(1) == RowCol{1, 2});
}

TEST_CASE("from_text rejects malformed input") {
    CHECK_THROWS_AS(Graph::from_text("2\n0 2\n"), Error);  // vertex out of range
    CHECK_THROWS_AS(Graph::from_text("2\n0 0\n"), Error);  // self loop
    CHECK_THROWS_AS(Graph::from_text("x\n"), Error);       // bad count
    CHECK_THROWS_AS(Graph::from_text("2\n0\n"), Error);    // partial edge
}

TEST_CASE("dot export lists edges") {
    Graph g = path_graph(3);
    std::string dot = g.to_dot();
    CHECK(dot.find("0 -- 1") != std::string::npos);
    CHECK(dot.find("1 -- 2") != std::string::npos);
}

TEST_CASE("toggle primitives") {
    Graph g(5);
    g.add_edge(0, 1);
    BitRow s(5);
    s.set(0);
    s.set(1);
    s.set(2);
    g.apply_toggle_within(s);
    CHECK(sorted_edges(g) == std::vector<std::pair<VertexId, VertexId>>{{0, 2}, {1, 2}});
    BitRow a(5), b(5);
    a.set(3);
    b.set(0);
    b.set(4);
    g.apply_toggle_between(a, b);
    CHECK(g.has_edge(3, 0));
    CHECK(g.has_edge(3, 4));
    CHECK_THROWS_AS(g.apply_toggle_between(a, a), Error); // not disjoint
}

TEST_CASE("equality is structural on active ids") {
    Graph a = path_graph(3);
    Graph b = path_graph(3);
    b.set_label(0, RowCol{9, 9}); // labels are metadata
    CHECK(a == b);
    b.apply_delete(2);
    CHECK(!(a == b));
    Graph c = Graph::from_edges(3, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}});
    CHECK(!(a == c));
}
