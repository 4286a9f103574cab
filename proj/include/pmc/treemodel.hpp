#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pmc/graph.hpp"

namespace pmc {

// Unrooted cubic-or-wider tree plus a bijection between graph vertices and
// tree leaves, used for cut-rank width and rank-depth.
struct Decomposition {
    std::size_t num_nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, VertexId>> leaf_map; // tree leaf -> graph vertex

    std::string to_json() const;
    static Decomposition from_json(const std::string& text);
};

// throws Error when the tree is malformed or leaf_map is not a bijection
// onto the leaves of the tree and the active vertices of g; with
// require_normalized, internal nodes of degree < 3 are also rejected
void validate_decomposition(const Graph& g, const Decomposition& dec,
                            bool require_normalized = true);

// max cut-rank over unions of subsets of the parts induced by removing node;
// exponential in the node degree, guarded by degree_cap
std::size_t node_width(const Graph& g, const Decomposition& dec, int node,
                       std::size_t degree_cap = 12);
std::size_t decomposition_width(const Graph& g, const Decomposition& dec,
                                std::size_t degree_cap = 12);
std::size_t tree_radius(const Decomposition& dec);

// exact rank-depth: min over decomposition trees of max(width, radius);
// 0 when the graph has at most one vertex
std::size_t rank_depth(const Graph& g, std::size_t max_vertices = 8);
std::pair<std::size_t, Decomposition> rank_depth_with_witness(const Graph& g,
                                                              std::size_t max_vertices = 8);

// enumerate all leaf-labelled trees on n leaves whose internal nodes have
// degree at least 3 (n >= 2); leaves are nodes 0..n-1
std::vector<Decomposition> enumerate_trees(std::size_t n);

// contract away one degree-2 tree node (leaf_map untouched); used by the
// normalization cross-checks
Decomposition suppress_degree_two(const Decomposition& dec, int node);

// Rooted (d,m)-tree-model: every leaf at depth exactly d, leaves labelled by
// lambda into [1..m], adjacency decided by (lambda(u), lambda(v), half the
// tree distance) membership in s. Node ids are arbitrary; the leaves must be
// exactly the active vertex ids of the modelled graph.
struct TreeModel {
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> edges;
    int root = 0;
    int d = 0;
    int m = 1;
    std::vector<std::pair<int, int>> lambda;   // leaf node -> label in [1..m]
    std::vector<std::array<int, 3>> s;         // (label, label, half-distance)

    std::string to_json() const;
    static TreeModel from_json(const std::string& text);
};

// leaves of the model must be exactly the active vertex ids of g (else
// Error); returns false when a depth or adjacency condition fails
bool validate_tree_model(const Graph& g, const TreeModel& tm, std::string* why = nullptr);

// canonical (1,n)-tree-model: a root above one leaf per vertex
TreeModel make_basic_tree_model(const Graph& g);

} // namespace pmc
