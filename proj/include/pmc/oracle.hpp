#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pmc/graph.hpp"
#include "pmc/trace.hpp"

namespace pmc {

// total-order key equal exactly for isomorphic graphs, up to 10 vertices
// (upper-triangle adjacency bits of the lexicographically least ordering)
struct CanonicalForm {
    int n = 0;
    std::uint64_t bits = 0;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr std::size_t canonical_vertex_bound = 10;

CanonicalForm canonical_form(const Graph& g);

// SizeLimitError above the bound, never a silent wrong answer
bool is_isomorphic(const Graph& g, const Graph& h, std::size_t max_vertices = canonical_vertex_bound);

// exact backtracking isomorphism at any size; pairs (g vertex, h vertex)
std::optional<std::vector<std::pair<VertexId, VertexId>>> find_isomorphism(const Graph& g,
                                                                           const Graph& h);

struct SearchBudget {
    std::size_t max_states = 1'000'000;
    std::size_t max_vertices = canonical_vertex_bound;
};

enum class SearchStatus { yes, no, unknown };

struct SearchResult {
    SearchStatus status = SearchStatus::unknown;
    std::optional<PivotTrace> witness; // replays on the host to a graph isomorphic to the pattern
    std::size_t states_explored = 0;
};

// exhaustive pivot/delete search memoized on canonical forms; "no" only after
// exhausting the reachable space, "unknown" when budget.max_states is hit
SearchResult has_pivot_minor(const Graph& host, const Graph& pattern, SearchBudget budget = {});

// exhaustive injective backtracking; budget counts search-node expansions
SearchResult has_induced_subgraph(const Graph& host, const Graph& pattern, SearchBudget budget = {});

} // namespace pmc
