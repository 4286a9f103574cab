#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmc/bitrow.hpp"
#include "pmc/graph.hpp"

namespace pmc {

// rank over GF(2) of a list of bit rows, by word-wise row reduction
std::size_t gf2_rank(std::vector<BitRow> rows);

// rank of the bipartite adjacency submatrix between s and V(g) minus s
std::size_t cut_rank(const Graph& g, std::span<const VertexId> s);
std::size_t cut_rank(const Graph& g, const BitRow& side);

} // namespace pmc
