#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pmc/graph.hpp"

namespace pmc {

// Flip structure over the column set of an m-by-n path union: disjoint
// non-empty column classes (columns may stay uncovered) plus a symmetric set
// of class-index pairs, diagonal pairs allowed. Classes and pairs are stored
// 0-based internally; the JSON form is 1-based.
struct FlipSpec {
    int m = 0;
    int n = 0;
    std::vector<std::vector<int>> classes;   // each sorted, disjoint, 1-based columns in [1..n]
    std::set<std::pair<int, int>> pairs;     // normalized (i <= j), 0-based class indices

    std::size_t num_classes() const { return classes.size(); }
    bool has_pair(int i, int j) const;
    void add_pair(int i, int j);
    void toggle_pair(int i, int j);
    // class index covering column (1-based), or -1 when uncovered
    int class_of_column(int col) const;

    std::string to_json() const;
    static FlipSpec from_json(const std::string& text);

    friend bool operator==(const FlipSpec&, const FlipSpec&) = default;
};

// throws Error when classes overlap, are empty or out of range, or pairs
// reference invalid class indices
void validate_flip_spec(const FlipSpec& spec);

// toggle adjacency on all pairs of distinct vertices within s
void toggle_within(Graph& g, const BitRow& s);
// toggle adjacency between disjoint sets s and t
void toggle_between(Graph& g, const BitRow& s, const BitRow& t);

// vertices of g whose label column lies in the class (any row)
BitRow class_vertices(const Graph& g, const FlipSpec& spec, int cls);

// apply the flip toggles of spec to h; pre: h is grid(spec.m, spec.n)
Graph apply_flip(const Graph& h, const FlipSpec& spec);

// the X-flip of a path: complement within x; pre: g is a path
Graph x_flip(const Graph& g, const BitRow& x);
Graph x_flip(const Graph& g, std::span<const VertexId> x);

// exact equality of g with apply_flip(grid(spec.m, spec.n), spec), matched
// through (row, col) labels
bool is_flip_of(const Graph& g, const FlipSpec& spec);

struct FlipClassesCLR {
    std::vector<int> c, l, r; // class indices, ascending
};

// C/L/R split of all classes relative to the ordered pair (x, xp)
FlipClassesCLR flip_classes_clr(const FlipSpec& spec, int x, int xp);

// symmetric D set: normalized pairs from C*L, C*R, L*R
std::set<std::pair<int, int>> d_set(const FlipSpec& spec, int x, int xp);

// same classes over fewer rows; column-union classes never empty, asserted
FlipSpec restrict_flip(const FlipSpec& spec, int rows);

// pairs := pairs xor d_set(x, xp), then restrict to rows
FlipSpec predict_flip_after_pivot(const FlipSpec& spec, int x, int xp, int rows);

// drop one class and every pair mentioning it; higher indices shift down
FlipSpec drop_class(const FlipSpec& spec, int cls);

// drop columns > cols from every class, then drop emptied classes and their
// pairs; also sets n := cols
FlipSpec restrict_columns(const FlipSpec& spec, int cols);

// merge classes i and j into one class at position min(i,j). The merged
// class keeps a pair with class z iff keep_with(z) (z in old indexing); the
// diagonal pair on the merged class is always present; pairs between other
// classes are taken from base_pairs (old indexing, normalized).
FlipSpec merge_classes(const FlipSpec& spec, int i, int j,
                       const std::set<std::pair<int, int>>& base_pairs,
                       const std::vector<bool>& keep_with);

// searches for x with is_path(toggle_within(g, x)); exact for <= 12 active
// vertices by ascending-mask enumeration, SizeLimitError above
std::optional<BitRow> recognize_one_flip_of_path(const Graph& g);
// candidate check usable at any size
bool verify_one_flip_of_path(const Graph& g, const BitRow& x);

// uniform value below bound from a seeded engine; hand-rolled so outputs are
// identical across standard libraries
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound);

// random coarsening of [1..n] plus random symmetric pair set
FlipSpec random_flip_spec(std::mt19937_64& rng, int m, int n);

} // namespace pmc
