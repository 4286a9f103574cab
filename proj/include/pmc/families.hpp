#pragma once

#include <span>
#include <vector>

#include "pmc/graph.hpp"

namespace pmc {

Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);

// m disjoint copies of P_n; vertex (row r, col c) has id (r-1)*n + (c-1)
// and label (r, c), both 1-based
Graph grid(int m, int n);

// disjoint union of g and h plus cross edges order_g[i] ~ order_h[j] for
// i >= j; h's ids are shifted by g.capacity()
Graph half_graph_join(const Graph& g, const Graph& h,
                      std::span<const VertexId> order_g,
                      std::span<const VertexId> order_h);

enum class TriKind { kk, kkbar, kbarkbar };

// the three half-graph outcome families; side ids 0..t-1 and t..2t-1
Graph tri_family(TriKind kind, int t);

struct StPathSpec {
    int s = 0;      // total vertices
    int t = 0;      // flipped block size
    int offset = 1; // 1-based start of the block, 1 <= offset <= s-t+1
};

// the X-flip of P_s with X the block of t consecutive vertices at offset
Graph st_path(const StPathSpec& spec);

} // namespace pmc
