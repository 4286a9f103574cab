#include "pmc/oracle.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

namespace pmc {

namespace {

struct Compact {
    Graph g;                        // dense ids 0..n-1
    std::vector<VertexId> orig;    // dense id -> original id
};

Compact compact_copy(const Graph& g) {
    Compact out;
    out.orig = g.vertices();
    Graph dense(out.orig.size());
    std::map<VertexId, VertexId> to_dense;
    for (std::size_t i = 0; i < out.orig.size(); ++i)
        to_dense[out.orig[i]] = static_cast<VertexId>(i);
    for (auto [u, v] : g.edges()) dense.add_edge(to_dense[u], to_dense[v]);
    out.g = std::move(dense);
    return out;
}

// local adjacency bitmask rows for graphs within the canonical bound
struct SmallAdj {
    std::size_t n = 0;
    std::array<std::uint16_t, canonical_vertex_bound> row{};
};

SmallAdj small_adj(const Graph& g) {
    SmallAdj a;
    auto verts = g.vertices();
    a.n = verts.size();
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = i + 1; j < a.n; ++j)
            if (g.has_edge(verts[i], verts[j])) {
                a.row[i] |= static_cast<std::uint16_t>(1u << j);
                a.row[j] |= static_cast<std::uint16_t>(1u << i);
            }
    return a;
}

// lexicographically least upper-triangle bit string over all orderings;
// at each level only rows equal to the level minimum can extend a least
// string, and twin candidates lead to isomorphic completions
void canonical_rec(const SmallAdj& a, std::vector<int>& perm, std::uint16_t used,
                   std::uint64_t prefix, std::uint64_t& best, bool& have_best) {
    std::size_t k = perm.size();
    if (k == a.n) {
        if (!have_best || prefix < best) {
            best = prefix;
            have_best = true;
        }
        return;
    }
    std::uint64_t min_row = ~std::uint64_t{0};
    std::array<int, canonical_vertex_bound> args{};
    std::size_t num_args = 0;
    for (std::size_t x = 0; x < a.n; ++x) {
        if (used >> x & 1) continue;
        std::uint64_t row = 0;
        for (std::size_t t = 0; t < k; ++t)
            row = row << 1 | (a.row[x] >> perm[t] & 1);
        if (row < min_row) {
            min_row = row;
            num_args = 0;
        }
        if (row == min_row) args[num_args++] = static_cast<int>(x);
    }
    std::uint64_t next_prefix = prefix << k | min_row;
    for (std::size_t i = 0; i < num_args; ++i) {
        int x = args[i];
        bool twin_seen = false;
        for (std::size_t j = 0; j < i && !twin_seen; ++j) {
            int y = args[j];
            std::uint16_t mask =
                static_cast<std::uint16_t>(~((1u << x) | (1u << y)));
            twin_seen = (a.row[x] & mask) == (a.row[y] & mask);
        }
        if (twin_seen) continue;
        perm.push_back(x);
        canonical_rec(a, perm, static_cast<std::uint16_t>(used | (1u << x)), next_prefix, best,
                      have_best);
        perm.pop_back();
    }
}

} // namespace

CanonicalForm canonical_form(const Graph& g) {
    std::size_t n = g.num_active();
    if (n > canonical_vertex_bound)
        throw SizeLimitError("canonical_form: above the size bound");
    SmallAdj a = small_adj(g);
    if (n <= 1) return CanonicalForm{static_cast<int>(n), 0};
    std::vector<int> perm;
    perm.reserve(n);
    std::uint64_t best = 0;
    bool have_best = false;
    canonical_rec(a, perm, 0, 0, best, have_best);
    return CanonicalForm{static_cast<int>(n), best};
}

bool is_isomorphic(const Graph& g, const Graph& h, std::size_t max_vertices) {
    if (g.num_active() > max_vertices || h.num_active() > max_vertices)
        throw SizeLimitError("is_isomorphic: above the size bound");
    if (g.num_active() != h.num_active()) return false;
    return canonical_form(g) == canonical_form(h);
}

std::optional<std::vector<std::pair<VertexId, VertexId>>> find_isomorphism(const Graph& g,
                                                                           const Graph& h) {
    if (g.num_active() != h.num_active()) return std::nullopt;
    if (g.num_edges() != h.num_edges()) return std::nullopt;
    auto gv = g.vertices();
    auto hv = h.vertices();
    std::size_t n = gv.size();
    // most-constrained first: match descending degree
    std::sort(gv.begin(), gv.end(), [&](VertexId x, VertexId y) {
        auto dx = g.degree(x), dy = g.degree(y);
        return dx != dy ? dx > dy : x < y;
    });
    std::vector<long> image(g.capacity(), -1);
    std::vector<char> taken(h.capacity(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == n) return true;
        VertexId x = gv[i];
        for (VertexId y : hv) {
            if (taken[y] || g.degree(x) != h.degree(y)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (g.has_edge(x, gv[j]) !=
                    h.has_edge(y, static_cast<VertexId>(image[gv[j]])))
                    ok = false;
            if (!ok) continue;
            image[x] = y;
            taken[y] = 1;
            if (self(self, i + 1)) return true;
            image[x] = -1;
            taken[y] = 0;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId x : g.vertices()) out.emplace_back(x, static_cast<VertexId>(image[x]));
    return out;
}

SearchResult has_pivot_minor(const Graph& host, const Graph& pattern, SearchBudget budget) {
    PMC_CHECK(budget.max_states > 0, "has_pivot_minor: empty budget");
    if (host.num_active() > budget.max_vertices || pattern.num_active() > budget.max_vertices)
        throw SizeLimitError("has_pivot_minor: above the size bound");
    PMC_CHECK(pattern.num_active() >= 1, "has_pivot_minor: empty pattern");

    Compact c = compact_copy(host);
    CanonicalForm target = canonical_form(pattern);
    std::size_t want = pattern.num_active();

    struct Node {
        Graph g;
        long parent;
        TraceStep step;
    };
    std::deque<Node> nodes;
    std::set<CanonicalForm> seen;
    SearchResult res;

    auto finish_yes = [&](long idx) {
        std::vector<TraceStep> steps;
        for (long at = idx; at > 0; at = nodes[at].parent) steps.push_back(nodes[at].step);
        std::reverse(steps.begin(), steps.end());
        PivotTrace trace;
        for (auto& s : steps) {
            if (auto* p = std::get_if<PivotStep>(&s))
                trace.pivot(c.orig[p->u], c.orig[p->v]);
            else
                trace.del(c.orig[std::get<DeleteStep>(s).v]);
        }
        // independent certificate check before returning
        Graph end = replay(host, trace);
        PMC_INTERNAL(is_isomorphic(end, pattern),
                     "has_pivot_minor: witness replay is not isomorphic to the pattern");
        res.status = SearchStatus::yes;
        res.witness = std::move(trace);
    };

    seen.insert(canonical_form(c.g));
    nodes.push_back(Node{c.g, -1, DeleteStep{0}});
    res.states_explored = 1;
    if (c.g.num_active() == want && canonical_form(c.g) == target) {
        finish_yes(0);
        return res;
    }

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const Graph snapshot = nodes[head].g; // deque may grow while we expand
        // deletions only above the pattern size; pivots also at the pattern
        // size, since a pivots-only sequence is a pivot-minor too
        if (snapshot.num_active() < want) continue;
        auto try_push = [&](Graph&& next, TraceStep step) -> bool {
            CanonicalForm cf = canonical_form(next);
            if (!seen.insert(cf).second) return false;
            nodes.push_back(Node{std::move(next), static_cast<long>(head), step});
            ++res.states_explored;
            if (nodes.back().g.num_active() == want && cf == target) {
                finish_yes(static_cast<long>(nodes.size()) - 1);
                return true;
            }
            return false;
        };
        if (snapshot.num_active() > want) {
            for (VertexId v : snapshot.vertices()) {
                if (res.states_explored >= budget.max_states) {
                    res.status = SearchStatus::unknown;
                    return res;
                }
                if (try_push(snapshot.deleted(v), DeleteStep{v})) return res;
            }
        }
        for (auto [u, v] : snapshot.edges()) {
            if (res.states_explored >= budget.max_states) {
                res.status = SearchStatus::unknown;
                return res;
            }
            if (try_push(snapshot.pivoted(u, v), PivotStep{u, v})) return res;
        }
    }
    res.status = SearchStatus::no;
    return res;
}

SearchResult has_induced_subgraph(const Graph& host, const Graph& pattern, SearchBudget budget) {
    SearchResult res;
    auto hv = host.vertices();
    auto pv = pattern.vertices();
    std::size_t n = pv.size();
    if (n > hv.size()) {
        res.status = SearchStatus::no;
        return res;
    }
    PMC_CHECK(n >= 1, "has_induced_subgraph: empty pattern");
    std::sort(pv.begin(), pv.end(), [&](VertexId x, VertexId y) {
        auto dx = pattern.degree(x), dy = pattern.degree(y);
        return dx != dy ? dx > dy : x < y;
    });
    std::vector<long> image(pattern.capacity(), -1);
    std::vector<char> taken(host.capacity(), 0);
    bool exhausted = false;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == n) return true;
        if (++res.states_explored > budget.max_states) {
            exhausted = true;
            return false;
        }
        VertexId x = pv[i];
        for (VertexId y : hv) {
            if (taken[y] || host.degree(y) < pattern.degree(x)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (pattern.has_edge(x, pv[j]) !=
                    host.has_edge(y, static_cast<VertexId>(image[pv[j]])))
                    ok = false;
            if (!ok) continue;
            image[x] = y;
            taken[y] = 1;
            if (self(self, i + 1)) return true;
            if (exhausted) return false;
            image[x] = -1;
            taken[y] = 0;
        }
        return false;
    };
    if (rec(rec, 0)) {
        res.status = SearchStatus::yes;
        BitRow keep(host.capacity());
        for (VertexId x : pv) keep.set(static_cast<std::size_t>(image[x]));
        PivotTrace trace;
        for (VertexId y : hv)
            if (!keep.test(y)) trace.del(y);
        res.witness = std::move(trace);
        return res;
    }
    res.status = exhausted ? SearchStatus::unknown : SearchStatus::no;
    return res;
}

} // namespace pmc
