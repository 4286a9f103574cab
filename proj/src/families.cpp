#include "pmc/families.hpp"

#include "pmc/flip.hpp"

namespace pmc {

Graph path_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    return g;
}

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return g;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph grid(int m, int n) {
    PMC_CHECK(m >= 1 && n >= 1, "grid: need m, n >= 1");
    Graph g(static_cast<std::size_t>(m) * n);
    for (int r = 1; r <= m; ++r)
        for (int c = 1; c <= n; ++c) {
            auto v = static_cast<VertexId>((r - 1) * n + (c - 1));
            g.set_label(v, RowCol{r, c});
            if (c > 1) g.add_edge(v - 1, v);
        }
    return g;
}

Graph half_graph_join(const Graph& g, const Graph& h, std::span<const VertexId> order_g,
                      std::span<const VertexId> order_h) {
    PMC_CHECK(g.num_active() == h.num_active(), "half_graph_join: size mismatch");
    PMC_CHECK(order_g.size() == g.num_active() && order_h.size() == h.num_active(),
              "half_graph_join: orders must cover every vertex");
    Graph out = disjoint_union(g, h);
    auto off = static_cast<VertexId>(g.capacity());
    for (std::size_t i = 0; i < order_g.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            out.add_edge(order_g[i], static_cast<VertexId>(order_h[j] + off));
    return out;
}

Graph tri_family(TriKind kind, int t) {
    PMC_CHECK(t >= 1, "tri_family: need t >= 1");
    Graph a = kind == TriKind::kbarkbar ? empty_graph(t) : complete_graph(t);
    Graph b = kind == TriKind::kk ? complete_graph(t) : empty_graph(t);
    std::vector<VertexId> order(t);
    for (int i = 0; i < t; ++i) order[i] = static_cast<VertexId>(i);
    return half_graph_join(a, b, order, order);
}

Graph st_path(const StPathSpec& spec) {
    PMC_CHECK(spec.t >= 0 && spec.t <= spec.s, "st_path: need 0 <= t <= s");
    PMC_CHECK(spec.offset >= 1 && spec.offset + spec.t - 1 <= spec.s,
              "st_path: block out of range");
    Graph g = path_graph(static_cast<std::size_t>(spec.s));
    BitRow x(g.capacity());
    for (int i = 0; i < spec.t; ++i) x.set(static_cast<std::size_t>(spec.offset - 1 + i));
    return x_flip(g, x);
}

} // namespace pmc
