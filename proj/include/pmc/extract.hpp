#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "pmc/flip.hpp"
#include "pmc/graph.hpp"
#include "pmc/oracle.hpp"
#include "pmc/trace.hpp"

namespace pmc {

// output of one grid-flip reduction step; trace starts at the step's input
struct ReductionResult {
    Graph graph;
    std::optional<FlipSpec> spec; // claimed flip structure of graph
    PivotTrace trace;
};

// a graph known to be the x-flip of the path along order; x may be empty
struct PathReduction {
    Graph graph;
    std::vector<VertexId> order;
    BitRow x;
    PivotTrace trace;
};

// adjacent u in class x on row_a and v in class xp on row_b; pre (x,xp) in F
std::pair<VertexId, VertexId> find_cross_edge(const Graph& g, const FlipSpec& spec,
                                              int x, int xp, int row_a, int row_b);

// drops class x with (x,x) not in F: zero steps when x has no F-partner,
// else one cross pivot plus deletion of the last two rows
ReductionResult case1_reduce(const Graph& g, const FlipSpec& spec, int x);

// merges classes x and xp along an uncovered-interior path q in the last
// row; pre (x,x),(xp,xp) in F, (x,xp) not in F
ReductionResult case2_reduce(const Graph& g, const FlipSpec& spec, int x, int xp,
                             const std::vector<VertexId>& q);

// one class fewer using exactly four rows; pre k >= 2, m >= 5
ReductionResult cor_reduce(const Graph& g, const FlipSpec& spec);

// iterate cor_reduce to one class, keep only the first row; the result is
// the x-flip of the path along order; pre spec.m >= 4(k-1)+1
PathReduction to_one_flip(const Graph& g, const FlipSpec& spec);

// pivot ab and delete both, for a,b in x at path distance >= 3; contracts
// the path and sets x' = x xor closed path neighborhoods of a and b
PathReduction pivot_far_pair(const Graph& g, const std::vector<VertexId>& p,
                             const BitRow& x, VertexId a, VertexId b);

// one shrink of a contiguous flipped block of size >= 6: block t -> t-6,
// path s -> s-2 (pivot_far_pair at the block's 2nd and (t-1)-th vertices)
PathReduction shrink_flipped_block(const Graph& g, const std::vector<VertexId>& p,
                                   const BitRow& x);

// from the complement of the path along p to an induced P_t;
// pre |p| >= ceil(3t/2)+1
PathReduction path_from_complement(const Graph& g, const std::vector<VertexId>& p, int t);

// normalization of an x-flip with the first ell of p in x and |x| >= ell+4m;
// ends in a complement-of-path on ell+m vertices
PathReduction reduce_big_flip(const Graph& g, const std::vector<VertexId>& p,
                              const BitRow& x, int ell, int m);

// complement-of-path on t vertices from any x-flip with |x| >= 4t-3
PathReduction flip_to_complement(const Graph& g, const std::vector<VertexId>& p,
                                 const BitRow& x, int t);

// induced P_t from a 1-flip of P_n with n >= 3(2t^2-t-1)
PathReduction one_flip_to_path(const Graph& g, const std::vector<VertexId>& p,
                               const BitRow& x, int t);

struct OutcomeKK { int s = 0; };
struct OutcomeKKbar { int s = 0; };
struct OutcomeKbarKbar { int s = 0; };
struct OutcomeFlippedGrid {
    Graph g;
    FlipSpec spec;
};
using Outcome = std::variant<OutcomeKK, OutcomeKKbar, OutcomeKbarKbar, OutcomeFlippedGrid>;

enum class ExtractTarget { path, kk };

struct ExtractResult {
    Graph input;  // materialized graph the trace replays on
    Graph graph;  // final graph, isomorphic to P_t or K_t half-joined K_t
    PivotTrace trace;
    ExtractTarget target = ExtractTarget::path;
    int t = 0;
};

// the end-to-end pipeline; oracle_budget only matters for the two
// oracle-backed branches
ExtractResult extract_path(const Outcome& outcome, int t, SearchBudget oracle_budget = {});

} // namespace pmc
