#include <vector>

#include "doctest.h"
#include "pmc/families.hpp"
#include "pmc/oracle.hpp"
#include "pmc/treemodel.hpp"
#include "test_util.hpp"

using namespace pmc;
using pmc_test::random_graph;

namespace {
Decomposition star4() {
    Decomposition d;
    d.num_nodes = 5;
    d.edges = {{0, 4}, {1, 4}, {2, 4}, {3, 4}};
    d.leaf_map = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    return d;
}
} // namespace

TEST_CASE("tree enumeration counts match the series") {
    CHECK(enumerate_trees(2).size() == 1);
    CHECK(enumerate_trees(3).size() == 1);
    CHECK(enumerate_trees(4).size() == 4);
    CHECK(enumerate_trees(5).size() == 26);
    CHECK(enumerate_trees(6).size() == 236);
}

TEST_CASE("enumerated trees all validate") {
    Graph g = path_graph(5);
    for (const auto& dec : enumerate_trees(5)) validate_decomposition(g, dec);
}

TEST_CASE("decomposition validation rejects malformed trees") {
    Graph g = path_graph(4);
    Decomposition d = star4();
    validate_decomposition(g, d);

    Decomposition cycle = d;
    cycle.edges.push_back({0, 1});
    CHECK_THROWS_AS(validate_decomposition(g, cycle), Error);

    Decomposition bad_map = d;
    bad_map.leaf_map[0].second = 9; // no such vertex
    CHECK_THROWS_AS(validate_decomposition(g, bad_map), Error);

    Decomposition missing = d;
    missing.leaf_map.pop_back();
    CHECK_THROWS_AS(validate_decomposition(g, missing), Error);

    // a degree-2 internal node fails normalized validation only
    Decomposition sub;
    sub.num_nodes = 6; // leaves 0..3, internals 4 and 5, 5 has degree 2
    sub.edges = {{0, 4}, {1, 4}, {2, 4}, {4, 5}, {3, 5}};
    sub.leaf_map = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK_THROWS_AS(validate_decomposition(g, sub), Error);
    validate_decomposition(g, sub, false);
    Decomposition fixed = suppress_degree_two(sub, 5);
    validate_decomposition(g, fixed);
}

TEST_CASE("node width on stars") {
    Decomposition d = star4();
    CHECK(node_width(complete_graph(4), d, 4) == 1);
    CHECK(node_width(path_graph(4), d, 4) == 2);
    CHECK(decomposition_width(path_graph(4), d) == 2);
    CHECK(tree_radius(d) == 1);
}

TEST_CASE("tree radius of a caterpillar") {
    Decomposition d;
    d.num_nodes = 6;
    d.edges = {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}};
    d.leaf_map = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK(tree_radius(d) == 2);
}

TEST_CASE("rank depth of fixed graphs") {
    CHECK(rank_depth(Graph(0)) == 0);
    CHECK(rank_depth(Graph(1)) == 0);
    CHECK(rank_depth(Graph(2)) == 1); // two isolated vertices
    for (std::size_t n = 2; n <= 6; ++n) CHECK(rank_depth(complete_graph(n)) == 1);
    CHECK(rank_depth(path_graph(4)) == 2);
}

TEST_CASE("rank depth witness is a valid decomposition achieving the value") {
    Graph g = path_graph(5);
    auto [value, dec] = rank_depth_with_witness(g);
    validate_decomposition(g, dec);
    CHECK(decomposition_width(g, dec) <= value);
    CHECK(tree_radius(dec) <= value);
    CHECK(std::max(decomposition_width(g, dec), tree_radius(dec)) == value);
}

TEST_CASE("rank depth size guard") {
    CHECK_THROWS_AS((void)rank_depth(complete_graph(9), 8), SizeLimitError);
}

TEST_CASE("rank depth monotone under deletion and invariant under pivoting") {
    std::mt19937_64 rng(31);
    for (int seed = 0; seed < 10; ++seed) {
        std::size_t n = 3 + rand_below(rng, 4);
        Graph g = random_graph(rng, n);
        std::size_t rd = rank_depth(g);
        VertexId v = static_cast<VertexId>(rand_below(rng, n));
        CHECK(rank_depth(delete_vertex(g, v)) <= rd);
        auto edges = g.edges();
        if (!edges.empty()) {
            auto [a, b] = edges[rand_below(rng, edges.size())];
            CHECK(rank_depth(pivot(g, a, b)) == rd);
        }
    }
}

TEST_CASE("decomposition json round trip") {
    Decomposition d = star4();
    Decomposition back = Decomposition::from_json(d.to_json());
    CHECK(back.num_nodes == d.num_nodes);
    CHECK(back.edges == d.edges);
    CHECK(back.leaf_map == d.leaf_map);
}

TEST_CASE("basic tree model validates, including sparse vertex ids") {
    std::mt19937_64 rng(41);
    for (int seed = 0; seed < 10; ++seed) {
        std::size_t n = 2 + rand_below(rng, 9);
        Graph g = random_graph(rng, n);
        if (n > 2 && rand_below(rng, 2)) g.apply_delete(static_cast<VertexId>(rand_below(rng, n)));
        TreeModel tm = make_basic_tree_model(g);
        std::string why;
        CHECK(validate_tree_model(g, tm, &why));
        CHECK(tm.d == 1);
        CHECK(tm.m == static_cast<int>(g.num_active()));
    }
}

TEST_CASE("tree model rejections") {
    Graph g = path_graph(4);
    TreeModel tm = make_basic_tree_model(g);
    std::string why;

    TreeModel wrong_s = tm;
    wrong_s.s.pop_back(); // drop one ordered adjacency triple
    CHECK(!validate_tree_model(g, wrong_s, &why));
    CHECK(!why.empty());

    TreeModel extra_s = tm;
    extra_s.s.push_back({1, 3, 1}); // claims a non-edge
    CHECK(!validate_tree_model(g, extra_s));

    TreeModel wrong_d = tm;
    wrong_d.d = 2; // leaves sit at depth 1
    CHECK(!validate_tree_model(g, wrong_d));

    TreeModel missing_leaf = tm;
    missing_leaf.nodes.pop_back();
    CHECK_THROWS_AS(validate_tree_model(g, missing_leaf), Error);

    TreeModel not_tree = tm;
    not_tree.edges.push_back({0, 1});
    CHECK_THROWS_AS(validate_tree_model(g, not_tree), Error);

    TreeModel bad_label = tm;
    for (auto& [leaf, lab] : bad_label.lambda)
        if (leaf == 0) lab = 99; // out of [1..m]
    CHECK_THROWS_AS(validate_tree_model(g, bad_label), Error);
}

TEST_CASE("tree model json round trip") {
    TreeModel tm = make_basic_tree_model(path_graph(3));
    TreeModel back = TreeModel::from_json(tm.to_json());
    CHECK(back.nodes == tm.nodes);
    CHECK(back.edges == tm.edges);
    CHECK(back.root == tm.root);
    CHECK(back.d == tm.d);
    CHECK(back.m == tm.m);
    CHECK(back.lambda == tm.lambda);
    CHECK(back.s == tm.s);
    CHECK(validate_tree_model(path_graph(3), back));
}
