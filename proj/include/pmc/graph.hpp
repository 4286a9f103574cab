#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmc/bitrow.hpp"
#include "pmc/error.hpp"

namespace pmc {

using VertexId = std::uint32_t;

struct RowCol {
    int row = 0;
    int col = 0;
    friend bool operator==(const RowCol&, const RowCol&) = default;
    friend auto operator<=>(const RowCol&, const RowCol&) = default;
};

// Simple undirected graph on stable integer ids. Ids are assigned densely at
// construction and are never renumbered or reused: deleting a vertex only
// removes it from the active set. Adjacency lives in per-vertex bit rows over
// the id space; rows of deleted vertices are freed and reads mask stale bits
// with the active set.
class Graph {
public:
    Graph() : Graph(0) {}
    explicit Graph(std::size_t n);
    static Graph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges);

    std::size_t capacity() const { return cap_; }
    std::size_t num_active() const { return active_.count(); }
    bool is_active(VertexId v) const { return v < cap_ && active_.test(v); }
    std::vector<VertexId> vertices() const;
    const BitRow& active_bits() const { return active_; }

    bool has_edge(VertexId u, VertexId v) const;
    std::size_t degree(VertexId v) const;
    std::size_t num_edges() const;
    std::vector<VertexId> neighbors(VertexId v) const;
    BitRow neighbor_bits(VertexId v) const; // masked by the active set
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    void add_edge(VertexId u, VertexId v);
    void remove_edge(VertexId u, VertexId v);
    void toggle_edge(VertexId u, VertexId v);

    std::optional<RowCol> label(VertexId v) const;
    void set_label(VertexId v, RowCol rc);
    const std::map<VertexId, RowCol>& labels() const { return labels_; }

    // in-place operations (replay and pipelines mutate a private copy)
    void apply_local_complement(VertexId v);
    void apply_pivot(VertexId u, VertexId v); // CLR form
    void apply_delete(VertexId v);
    // toggle all pairs of distinct vertices within s (subset of active)
    void apply_toggle_within(const BitRow& s);
    // toggle all pairs between disjoint active sets s and t
    void apply_toggle_between(const BitRow& s, const BitRow& t);

    // pure counterparts
    Graph local_complemented(VertexId v) const;
    Graph pivoted(VertexId u, VertexId v) const;
    Graph pivoted_by_local_complements(VertexId u, VertexId v) const; // G*u*v*u
    Graph deleted(VertexId v) const;
    Graph induced(std::span<const VertexId> keep) const;
    Graph complemented() const;

    // structural equality on active ids; labels are metadata and not compared
    bool operator==(const Graph& o) const;

    std::string to_text() const;
    static Graph from_text(std::string_view text);
    std::string to_dot() const;

private:
    void check_active(VertexId v, const char* what) const;

    std::size_t cap_ = 0;
    BitRow active_;
    std::vector<BitRow> rows_;
    std::map<VertexId, RowCol> labels_;
};

Graph local_complement(const Graph& g, VertexId v);
Graph pivot(const Graph& g, VertexId u, VertexId v);
Graph pivot_by_local_complements(const Graph& g, VertexId u, VertexId v);

// Pivot uv then delete u and v, where u has exactly the two neighbors v and w.
// The result provably equals g - {u,v,w} plus w reconnected to
// (N(v) xor N(w)) - {v,w}; that edge-set identity is asserted on every call.
Graph shorten_degree_two(const Graph& g, VertexId u, VertexId v);

Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep);
Graph delete_vertex(const Graph& g, VertexId v);
Graph complement(const Graph& g);
// Keeps g's ids; h's ids are shifted by g.capacity(). Labels are dropped.
Graph disjoint_union(const Graph& g, const Graph& h);

bool is_path(const Graph& g);
// Endpoint-to-endpoint order when g is a path (the lexicographically smaller
// endpoint first); nullopt otherwise.
std::optional<std::vector<VertexId>> path_order(const Graph& g);
bool is_complement_of_path(const Graph& g);

} // namespace pmc
