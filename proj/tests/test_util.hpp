#pragma once

#include <random>
#include <utility>
#include <vector>

#include "pmc/flip.hpp"
#include "pmc/graph.hpp"

namespace pmc_test {

inline pmc::Graph random_graph(std::mt19937_64& rng, std::size_t n) {
    pmc::Graph g(n);
    for (pmc::VertexId u = 0; u < n; ++u)
        for (pmc::VertexId v = u + 1; v < n; ++v)
            if (pmc::rand_below(rng, 2) == 1) g.add_edge(u, v);
    return g;
}

// g equals the path with edges order[i] ~ order[i+1], nothing else
inline bool path_along(const pmc::Graph& g, const std::vector<pmc::VertexId>& order) {
    if (g.num_active() != order.size()) return false;
    for (pmc::VertexId v : order)
        if (!g.is_active(v)) return false;
    if (order.size() <= 1) return g.num_edges() == 0;
    if (g.num_edges() != order.size() - 1) return false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (!g.has_edge(order[i], order[i + 1])) return false;
    return true;
}

inline bool x_flip_along(const pmc::Graph& g, const std::vector<pmc::VertexId>& order,
                         const pmc::BitRow& x) {
    pmc::Graph h = g;
    h.apply_toggle_within(x);
    return path_along(h, order);
}

inline pmc::BitRow bits_of(std::size_t capacity, const std::vector<pmc::VertexId>& vs) {
    pmc::BitRow b(capacity);
    for (pmc::VertexId v : vs) b.set(v);
    return b;
}

} // namespace pmc_test
