#include "pmc/graph.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace pmc {

Graph::Graph(std::size_t n) : cap_(n), active_(n), rows_(n, BitRow(n)) {
    for (std::size_t v = 0; v < n; ++v) active_.set(v);
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::check_active(VertexId v, const char* what) const {
    PMC_CHECK(is_active(v), std::string(what) + ": vertex " + std::to_string(v) + " is not active");
}

std::vector<VertexId> Graph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(num_active());
    active_.for_each([&](std::size_t v) { out.push_back(static_cast<VertexId>(v)); });
    return out;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    check_active(u, "has_edge");
    check_active(v, "has_edge");
    return rows_[u].test(v);
}

std::size_t Graph::degree(VertexId v) const {
    check_active(v, "degree");
    return (rows_[v] & active_).count();
}

std::size_t Graph::num_edges() const {
    std::size_t twice = 0;
    active_.for_each([&](std::size_t v) { twice += (rows_[v] & active_).count(); });
    return twice / 2;
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
    check_active(v, "neighbors");
    std::vector<VertexId> out;
    (rows_[v] & active_).for_each([&](std::size_t u) { out.push_back(static_cast<VertexId>(u)); });
    return out;
}

BitRow Graph::neighbor_bits(VertexId v) const {
    check_active(v, "neighbor_bits");
    return rows_[v] & active_;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    active_.for_each([&](std::size_t u) {
        (rows_[u] & active_).for_each([&](std::size_t v) {
            if (u < v) out.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        });
    });
    return out;
}

void Graph::add_edge(VertexId u, VertexId v) {
    check_active(u, "add_edge");
    check_active(v, "add_edge");
    PMC_CHECK(u != v, "add_edge: loop rejected");
    rows_[u].set(v);
    rows_[v].set(u);
}

void Graph::remove_edge(VertexId u, VertexId v) {
    check_active(u, "remove_edge");
    check_active(v, "remove_edge");
    rows_[u].reset(v);
    rows_[v].reset(u);
}

void Graph::toggle_edge(VertexId u, VertexId v) {
    check_active(u, "toggle_edge");
    check_active(v, "toggle_edge");
    PMC_CHECK(u != v, "toggle_edge: loop rejected");
    rows_[u].assign(v, !rows_[u].test(v));
    rows_[v].assign(u, !rows_[v].test(u));
}

std::optional<RowCol> Graph::label(VertexId v) const {
    auto it = labels_.find(v);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
}

void Graph::set_label(VertexId v, RowCol rc) {
    check_active(v, "set_label");
    labels_[v] = rc;
}

void Graph::apply_local_complement(VertexId v) {
    check_active(v, "local_complement");
    BitRow nb = neighbor_bits(v);
    nb.for_each([&](std::size_t x) {
        rows_[x] ^= nb;
        rows_[x].reset(x);
    });
}

void Graph::apply_pivot(VertexId u, VertexId v) {
    check_active(u, "pivot");
    check_active(v, "pivot");
    PMC_CHECK(rows_[u].test(v), "pivot: endpoints not adjacent");
    BitRow nu = neighbor_bits(u);
    BitRow nv = neighbor_bits(v);
    BitRow c = nu & nv;
    BitRow l = nu;
    l.andnot(nv);
    l.reset(v);
    BitRow r = nv;
    r.andnot(nu);
    r.reset(u);
    BitRow lr = l | r, cr = c | r, cl = c | l;
    c.for_each([&](std::size_t x) { rows_[x] ^= lr; });
    l.for_each([&](std::size_t x) { rows_[x] ^= cr; });
    r.for_each([&](std::size_t x) { rows_[x] ^= cl; });
    std::swap(rows_[u], rows_[v]);
    active_.for_each([&](std::size_t x) {
        auto& row = rows_[x];
        bool bu = row.test(u), bv = row.test(v);
        if (bu != bv) {
            row.assign(u, bv);
            row.assign(v, bu);
        }
    });
}

void Graph::apply_toggle_within(const BitRow& s) {
    BitRow live = s & active_;
    PMC_CHECK(live.count() == s.count(), "toggle_within: set must be active");
    live.for_each([&](std::size_t x) {
        rows_[x] ^= live;
        rows_[x].reset(x);
    });
}

void Graph::apply_toggle_between(const BitRow& s, const BitRow& t) {
    PMC_CHECK((s & t).none(), "toggle_between: sets must be disjoint");
    BitRow ls = s & active_, lt = t & active_;
    PMC_CHECK(ls.count() == s.count() && lt.count() == t.count(),
              "toggle_between: sets must be active");
    ls.for_each([&](std::size_t x) { rows_[x] ^= lt; });
    lt.for_each([&](std::size_t x) { rows_[x] ^= ls; });
}

void Graph::apply_delete(VertexId v) {
    check_active(v, "delete");
    active_.reset(v);
    rows_[v] = BitRow();
    labels_.erase(v);
}

Graph Graph::local_complemented(VertexId v) const {
    Graph g = *this;
    g.apply_local_complement(v);
    return g;
}

Graph Graph::pivoted(VertexId u, VertexId v) const {
    Graph g = *this;
    g.apply_pivot(u, v);
    return g;
}

Graph Graph::pivoted_by_local_complements(VertexId u, VertexId v) const {
    PMC_CHECK(has_edge(u, v), "pivot: endpoints not adjacent");
    Graph g = *this;
    g.apply_local_complement(u);
    g.apply_local_complement(v);
    g.apply_local_complement(u);
    return g;
}

Graph Graph::deleted(VertexId v) const {
    Graph g = *this;
    g.apply_delete(v);
    return g;
}

Graph Graph::induced(std::span<const VertexId> keep) const {
    BitRow mask(cap_);
    for (VertexId v : keep) {
        check_active(v, "induced");
        mask.set(v);
    }
    Graph g = *this;
    std::vector<VertexId> drop;
    active_.for_each([&](std::size_t v) {
        if (!mask.test(v)) drop.push_back(static_cast<VertexId>(v));
    });
    for (VertexId v : drop) g.apply_delete(v);
    return g;
}

Graph Graph::complemented() const {
    Graph g = *this;
    active_.for_each([&](std::size_t v) {
        BitRow row = active_;
        row ^= g.rows_[v] & active_;
        row.reset(v);
        g.rows_[v] = std::move(row);
    });
    return g;
}

bool Graph::operator==(const Graph& o) const {
    if (num_active() != o.num_active()) return false;
    bool same = true;
    active_.for_each([&](std::size_t v) {
        if (!o.is_active(static_cast<VertexId>(v))) same = false;
    });
    if (!same) return false;
    return edges() == o.edges();
}

std::string Graph::to_text() const {
    std::ostringstream out;
    auto verts = vertices();
    out << verts.size() << "\n";
    bool dense = verts.size() == cap_;
    if (!dense)
        for (VertexId v : verts) out << "V " << v << "\n";
    for (auto [u, v] : edges()) out << u << " " << v << "\n";
    for (auto& [v, rc] : labels_) out << "L " << v << " " << rc.row << " " << rc.col << "\n";
    return out.str();
}

Graph Graph::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    long n = -1;
    std::vector<VertexId> explicit_ids;
    std::vector<std::pair<VertexId, VertexId>> edge_list;
    std::vector<std::tuple<VertexId, int, int>> label_list;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (n < 0) {
            std::string first;
            if (!(ls >> first)) continue; // blank line before the count
            std::istringstream cs(first);
            long val = -1;
            PMC_CHECK(static_cast<bool>(cs >> val) && cs.eof() && val >= 0,
                      "graph text: bad vertex count");
            n = val;
            continue;
        }
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "V") {
            long id;
            PMC_CHECK(static_cast<bool>(ls >> id) && id >= 0, "graph text: bad V line");
            explicit_ids.push_back(static_cast<VertexId>(id));
        } else if (tok == "L") {
            long id, row, col;
            PMC_CHECK(static_cast<bool>(ls >> id >> row >> col) && id >= 0,
                      "graph text: bad L line");
            label_list.emplace_back(static_cast<VertexId>(id), static_cast<int>(row),
                                    static_cast<int>(col));
        } else {
            long u, v;
            std::istringstream es(line);
            PMC_CHECK(static_cast<bool>(es >> u >> v) && u >= 0 && v >= 0,
                      "graph text: bad edge line");
            edge_list.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        }
    }
    PMC_CHECK(n >= 0, "graph text: missing vertex count");
    Graph g;
    if (explicit_ids.empty()) {
        g = Graph(static_cast<std::size_t>(n));
    } else {
        PMC_CHECK(explicit_ids.size() == static_cast<std::size_t>(n),
                  "graph text: V line count differs from vertex count");
        VertexId maxid = *std::max_element(explicit_ids.begin(), explicit_ids.end());
        g = Graph(static_cast<std::size_t>(maxid) + 1);
        BitRow keep(g.capacity());
        for (VertexId v : explicit_ids) {
            PMC_CHECK(!keep.test(v), "graph text: duplicate V id");
            keep.set(v);
        }
        for (std::size_t v = 0; v < g.capacity(); ++v)
            if (!keep.test(v)) g.apply_delete(static_cast<VertexId>(v));
    }
    for (auto [u, v] : edge_list) g.add_edge(u, v);
    for (auto [v, row, col] : label_list) g.set_label(v, RowCol{row, col});
    return g;
}

std::string Graph::to_dot() const {
    std::ostringstream out;
    out << "graph g {\n";
    for (VertexId v : vertices()) {
        out << "  " << v;
        if (auto rc = label(v))
            out << " [label=\"" << v << " (" << rc->row << "," << rc->col << ")\"]";
        out << ";\n";
    }
    for (auto [u, v] : edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

Graph local_complement(const Graph& g, VertexId v) { return g.local_complemented(v); }
Graph pivot(const Graph& g, VertexId u, VertexId v) { return g.pivoted(u, v); }
Graph pivot_by_local_complements(const Graph& g, VertexId u, VertexId v) {
    return g.pivoted_by_local_complements(u, v);
}

Graph shorten_degree_two(const Graph& g, VertexId u, VertexId v) {
    PMC_CHECK(g.degree(u) == 2, "shorten: vertex must have exactly two neighbors");
    PMC_CHECK(g.has_edge(u, v), "shorten: uv must be an edge");
    auto nb = g.neighbors(u);
    VertexId w = nb[0] == v ? nb[1] : nb[0];

    Graph result = g.pivoted(u, v);
    result.apply_delete(u);
    result.apply_delete(v);

    // the shortening identity, rechecked on every call
    Graph expected = g;
    BitRow sym = g.neighbor_bits(v) ^ g.neighbor_bits(w);
    sym.reset(v);
    sym.reset(w);
    expected.apply_delete(u);
    expected.apply_delete(v);
    for (VertexId x : expected.neighbors(w)) expected.remove_edge(w, x);
    sym.for_each([&](std::size_t x) { expected.add_edge(w, static_cast<VertexId>(x)); });
    PMC_INTERNAL(result == expected, "shorten: pivot result differs from the edge-set formula");
    return result;
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep) { return g.induced(keep); }
Graph delete_vertex(const Graph& g, VertexId v) { return g.deleted(v); }
Graph complement(const Graph& g) { return g.complemented(); }

Graph disjoint_union(const Graph& g, const Graph& h) {
    std::size_t off = g.capacity();
    Graph out(off + h.capacity());
    for (std::size_t v = 0; v < out.capacity(); ++v) {
        bool live = v < off ? g.is_active(static_cast<VertexId>(v))
                            : h.is_active(static_cast<VertexId>(v - off));
        if (!live) out.apply_delete(static_cast<VertexId>(v));
    }
    for (auto [u, v] : g.edges()) out.add_edge(u, v);
    for (auto [u, v] : h.edges())
        out.add_edge(static_cast<VertexId>(u + off), static_cast<VertexId>(v + off));
    return out;
}

bool is_path(const Graph& g) { return path_order(g).has_value(); }

std::optional<std::vector<VertexId>> path_order(const Graph& g) {
    std::size_t n = g.num_active();
    if (n == 0) return std::nullopt;
    auto verts = g.vertices();
    if (n == 1) return std::vector<VertexId>{verts[0]};
    if (g.num_edges() != n - 1) return std::nullopt;
    std::vector<VertexId> ends;
    for (VertexId v : verts) {
        std::size_t d = g.degree(v);
        if (d == 0 || d > 2) return std::nullopt;
        if (d == 1) ends.push_back(v);
    }
    if (ends.size() != 2) return std::nullopt;
    std::vector<VertexId> order{std::min(ends[0], ends[1])};
    BitRow seen(g.capacity());
    seen.set(order[0]);
    while (order.size() < n) {
        BitRow next = g.neighbor_bits(order.back());
        next.andnot(seen);
        if (next.none()) return std::nullopt; // disconnected
        auto v = static_cast<VertexId>(next.find_first());
        order.push_back(v);
        seen.set(v);
    }
    return order;
}

bool is_complement_of_path(const Graph& g) { return is_path(complement(g)); }

namespace {
bool checks_enabled = true;
}

bool runtime_checks() { return checks_enabled; }
void set_runtime_checks(bool on) { checks_enabled = on; }

} // namespace pmc
