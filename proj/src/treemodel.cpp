#include "pmc/treemodel.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "json.hpp"
#include "pmc/gf2.hpp"

namespace pmc {

namespace {

using nlohmann::json;

std::vector<std::vector<int>> adjacency(std::size_t num_nodes,
                                        const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(num_nodes);
    for (auto [a, b] : edges) {
        PMC_CHECK(a >= 0 && b >= 0 && static_cast<std::size_t>(a) < num_nodes &&
                      static_cast<std::size_t>(b) < num_nodes && a != b,
                  "tree: edge endpoint out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

// distances from start, or -1 where unreachable
std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[start] = 0;
    q.push(start);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

void check_is_tree(std::size_t num_nodes, const std::vector<std::pair<int, int>>& edges,
                   const std::vector<std::vector<int>>& adj) {
    PMC_CHECK(num_nodes >= 1, "tree: at least one node required");
    PMC_CHECK(edges.size() + 1 == num_nodes, "tree: edge count must be node count minus one");
    auto dist = bfs(adj, 0);
    for (std::size_t v = 0; v < num_nodes; ++v)
        PMC_CHECK(dist[v] >= 0, "tree: not connected");
}

} // namespace

std::string Decomposition::to_json() const {
    json j;
    j["nodes"] = num_nodes;
    j["edges"] = json::array();
    for (auto [a, b] : edges) j["edges"].push_back({a, b});
    j["leaf_map"] = json::array();
    for (auto [node, v] : leaf_map) j["leaf_map"].push_back({node, v});
    return j.dump();
}

Decomposition Decomposition::from_json(const std::string& text) try {
    json j = json::parse(text);
    Decomposition dec;
    dec.num_nodes = j.at("nodes").get<std::size_t>();
    for (auto& e : j.at("edges")) dec.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (auto& e : j.at("leaf_map"))
        dec.leaf_map.emplace_back(e.at(0).get<int>(), e.at(1).get<VertexId>());
    return dec;
} catch (const json::exception& e) {
    throw Error(std::string("decomposition json: ") + e.what());
}

void validate_decomposition(const Graph& g, const Decomposition& dec, bool require_normalized) {
    auto adj = adjacency(dec.num_nodes, dec.edges);
    check_is_tree(dec.num_nodes, dec.edges, adj);
    std::set<int> leaves;
    for (std::size_t v = 0; v < dec.num_nodes; ++v) {
        if (adj[v].size() <= 1)
            leaves.insert(static_cast<int>(v));
        else if (require_normalized)
            PMC_CHECK(adj[v].size() >= 3, "decomposition: internal node of degree 2");
    }
    std::set<int> mapped_nodes;
    std::set<VertexId> mapped_verts;
    for (auto [node, v] : dec.leaf_map) {
        PMC_CHECK(leaves.count(node), "decomposition: leaf_map entry is not a leaf");
        PMC_CHECK(g.is_active(v), "decomposition: leaf_map vertex not active");
        PMC_CHECK(mapped_nodes.insert(node).second, "decomposition: duplicate leaf");
        PMC_CHECK(mapped_verts.insert(v).second, "decomposition: duplicate vertex");
    }
    PMC_CHECK(mapped_nodes.size() == leaves.size() && mapped_verts.size() == g.num_active(),
              "decomposition: leaf_map is not a bijection");
}

namespace {

// leaf masks (over leaf_map order) of the components of tree minus node
std::vector<std::uint32_t> part_masks(const Decomposition& dec,
                                      const std::vector<std::vector<int>>& adj, int node) {
    std::map<int, std::size_t> leaf_index;
    for (std::size_t i = 0; i < dec.leaf_map.size(); ++i) leaf_index[dec.leaf_map[i].first] = i;
    std::vector<std::uint32_t> parts;
    for (int start : adj[node]) {
        std::uint32_t mask = 0;
        std::vector<int> stack{start};
        std::vector<char> seen(dec.num_nodes, 0);
        seen[node] = seen[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            auto it = leaf_index.find(v);
            if (it != leaf_index.end()) mask |= 1u << it->second;
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        parts.push_back(mask);
    }
    return parts;
}

BitRow mask_to_side(const Graph& g, const Decomposition& dec, std::uint32_t mask) {
    BitRow side(g.capacity());
    for (std::size_t i = 0; i < dec.leaf_map.size(); ++i)
        if (mask >> i & 1) side.set(dec.leaf_map[i].second);
    return side;
}

} // namespace

std::size_t node_width(const Graph& g, const Decomposition& dec, int node,
                       std::size_t degree_cap) {
    auto adj = adjacency(dec.num_nodes, dec.edges);
    PMC_CHECK(node >= 0 && static_cast<std::size_t>(node) < dec.num_nodes,
              "node_width: bad node");
    PMC_CHECK(adj[node].size() >= 2, "node_width: leaf node");
    PMC_CHECK(adj[node].size() <= degree_cap, "node_width: degree cap exceeded");
    auto parts = part_masks(dec, adj, node);
    std::size_t best = 0;
    for (std::uint32_t pick = 0; pick < (1u << parts.size()); ++pick) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (pick >> i & 1) mask |= parts[i];
        best = std::max(best, cut_rank(g, mask_to_side(g, dec, mask)));
    }
    return best;
}

std::size_t decomposition_width(const Graph& g, const Decomposition& dec,
                                std::size_t degree_cap) {
    auto adj = adjacency(dec.num_nodes, dec.edges);
    std::size_t best = 0;
    for (std::size_t v = 0; v < dec.num_nodes; ++v)
        if (adj[v].size() >= 2) best = std::max(best, node_width(g, dec, static_cast<int>(v), degree_cap));
    return best;
}

std::size_t tree_radius(const Decomposition& dec) {
    auto adj = adjacency(dec.num_nodes, dec.edges);
    std::size_t best = dec.num_nodes;
    for (std::size_t v = 0; v < dec.num_nodes; ++v) {
        auto dist = bfs(adj, static_cast<int>(v));
        std::size_t ecc = static_cast<std::size_t>(*std::max_element(dist.begin(), dist.end()));
        best = std::min(best, ecc);
    }
    return best;
}

std::vector<Decomposition> enumerate_trees(std::size_t n) {
    PMC_CHECK(n >= 2, "enumerate_trees: need at least two leaves");
    std::vector<Decomposition> out;
    std::vector<std::pair<int, int>> edges{{0, 1}};
    int next_internal = static_cast<int>(n);
    std::vector<std::pair<int, VertexId>> leaf_map;
    for (std::size_t i = 0; i < n; ++i)
        leaf_map.emplace_back(static_cast<int>(i), static_cast<VertexId>(i));

    auto grow = [&](auto&& self, int k) -> void {
        if (k == static_cast<int>(n)) {
            out.push_back(Decomposition{static_cast<std::size_t>(next_internal), edges, leaf_map});
            return;
        }
        for (int w = static_cast<int>(n); w < next_internal; ++w) {
            edges.emplace_back(k, w);
            self(self, k + 1);
            edges.pop_back();
        }
        std::size_t m = edges.size();
        for (std::size_t e = 0; e < m; ++e) {
            auto [a, b] = edges[e];
            int x = next_internal++;
            edges[e] = {a, x};
            edges.emplace_back(b, x);
            edges.emplace_back(k, x);
            self(self, k + 1);
            edges.pop_back();
            edges.pop_back();
            edges[e] = {a, b};
            --next_internal;
        }
    };
    grow(grow, 2);
    return out;
}

Decomposition suppress_degree_two(const Decomposition& dec, int node) {
    auto adj = adjacency(dec.num_nodes, dec.edges);
    PMC_CHECK(node >= 0 && static_cast<std::size_t>(node) < dec.num_nodes &&
                  adj[node].size() == 2,
              "suppress: node must have degree 2");
    int a = adj[node][0], b = adj[node][1];
    Decomposition out;
    out.num_nodes = dec.num_nodes - 1;
    auto renum = [&](int v) { return v > node ? v - 1 : v; };
    for (auto [x, y] : dec.edges) {
        if (x == node || y == node) continue;
        out.edges.emplace_back(renum(x), renum(y));
    }
    out.edges.emplace_back(renum(a), renum(b));
    for (auto [leaf, v] : dec.leaf_map) out.leaf_map.emplace_back(renum(leaf), v);
    return out;
}

namespace {

struct RankTable {
    std::vector<std::size_t> rank; // indexed by leaf mask
};

RankTable build_rank_table(const Graph& g, const std::vector<VertexId>& verts) {
    std::size_t n = verts.size();
    RankTable t;
    t.rank.resize(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        BitRow side(g.capacity());
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) side.set(verts[i]);
        t.rank[mask] = cut_rank(g, side);
    }
    return t;
}

// max(width, radius) for one enumerated tree, via the precomputed table
std::size_t tree_value(const Decomposition& dec, const RankTable& table, std::size_t n) {
    auto adj = adjacency(dec.num_nodes, dec.edges);
    std::size_t width = 0;
    for (std::size_t v = n; v < dec.num_nodes; ++v) {
        std::vector<std::uint32_t> parts;
        {
            std::vector<int> stack;
            std::vector<char> seen(dec.num_nodes, 0);
            seen[v] = 1;
            for (int start : adj[v]) {
                std::uint32_t mask = 0;
                stack.assign(1, start);
                seen[start] = 1;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    if (static_cast<std::size_t>(x) < n) mask |= 1u << x;
                    for (int w : adj[x])
                        if (!seen[w]) {
                            seen[w] = 1;
                            stack.push_back(w);
                        }
                }
                parts.push_back(mask);
            }
        }
        for (std::uint32_t pick = 1; pick < (1u << parts.size()); ++pick) {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (pick >> i & 1) mask |= parts[i];
            width = std::max(width, table.rank[mask]);
        }
    }
    return std::max(width, tree_radius(dec));
}

} // namespace

std::pair<std::size_t, Decomposition> rank_depth_with_witness(const Graph& g,
                                                              std::size_t max_vertices) {
    std::size_t n = g.num_active();
    if (n > max_vertices) throw SizeLimitError("rank_depth: graph above size limit");
    auto verts = g.vertices();
    if (n <= 1) {
        Decomposition dec;
        dec.num_nodes = n == 0 ? 0 : 1;
        if (n == 1) dec.leaf_map.emplace_back(0, verts[0]);
        return {0, dec};
    }
    auto table = build_rank_table(g, verts);
    std::size_t best = g.capacity() + 1;
    Decomposition best_dec;
    for (auto& dec : enumerate_trees(n)) {
        std::size_t value = tree_value(dec, table, n);
        if (value < best) {
            best = value;
            best_dec = dec;
        }
    }
    for (auto& [leaf, v] : best_dec.leaf_map) v = verts[v];
    return {best, best_dec};
}

std::size_t rank_depth(const Graph& g, std::size_t max_vertices) {
    return rank_depth_with_witness(g, max_vertices).first;
}

std::string TreeModel::to_json() const {
    json j;
    j["nodes"] = nodes;
    j["edges"] = json::array();
    for (auto [a, b] : edges) j["edges"].push_back({a, b});
    j["root"] = root;
    j["d"] = d;
    j["m"] = m;
    j["lambda"] = json::array();
    for (auto [leaf, lab] : lambda) j["lambda"].push_back({leaf, lab});
    j["s"] = json::array();
    for (auto& t : s) j["s"].push_back({t[0], t[1], t[2]});
    return j.dump();
}

TreeModel TreeModel::from_json(const std::string& text) try {
    json j = json::parse(text);
    TreeModel tm;
    tm.nodes = j.at("nodes").get<std::vector<int>>();
    for (auto& e : j.at("edges")) tm.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    tm.root = j.at("root").get<int>();
    tm.d = j.at("d").get<int>();
    tm.m = j.at("m").get<int>();
    for (auto& e : j.at("lambda")) tm.lambda.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (auto& e : j.at("s"))
        tm.s.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    return tm;
} catch (const json::exception& e) {
    throw Error(std::string("tree-model json: ") + e.what());
}

bool validate_tree_model(const Graph& g, const TreeModel& tm, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    PMC_CHECK(tm.m >= 1 && tm.d >= 0, "tree-model: need m >= 1 and d >= 0");
    std::map<int, int> index; // node id -> dense index
    for (int id : tm.nodes) {
        PMC_CHECK(id >= 0, "tree-model: negative node id");
        PMC_CHECK(index.emplace(id, static_cast<int>(index.size())).second,
                  "tree-model: duplicate node id");
    }
    PMC_CHECK(index.count(tm.root), "tree-model: root is not a node");
    std::vector<std::pair<int, int>> dense_edges;
    for (auto [a, b] : tm.edges) {
        PMC_CHECK(index.count(a) && index.count(b), "tree-model: edge endpoint unknown");
        dense_edges.emplace_back(index[a], index[b]);
    }
    auto adj = adjacency(tm.nodes.size(), dense_edges);
    check_is_tree(tm.nodes.size(), dense_edges, adj);

    // leaves: non-root nodes of degree <= 1, or the root alone
    std::vector<int> leaves;
    for (std::size_t i = 0; i < tm.nodes.size(); ++i)
        if (tm.nodes[i] != tm.root && adj[i].size() <= 1) leaves.push_back(tm.nodes[i]);
    if (tm.nodes.size() == 1) leaves.push_back(tm.root);

    std::set<int> leaf_set(leaves.begin(), leaves.end());
    std::set<int> vert_set;
    for (VertexId v : g.vertices()) vert_set.insert(static_cast<int>(v));
    PMC_CHECK(leaf_set == vert_set, "tree-model: leaves differ from the graph's vertices");

    std::map<int, int> lab;
    for (auto [leaf, value] : tm.lambda) {
        PMC_CHECK(leaf_set.count(leaf), "tree-model: lambda key is not a leaf");
        PMC_CHECK(value >= 1 && value <= tm.m, "tree-model: lambda value out of range");
        PMC_CHECK(lab.emplace(leaf, value).second, "tree-model: duplicate lambda key");
    }
    PMC_CHECK(lab.size() == leaf_set.size(), "tree-model: lambda must cover every leaf");
    std::set<std::array<int, 3>> triples;
    for (auto& t : tm.s) {
        PMC_CHECK(t[0] >= 1 && t[0] <= tm.m && t[1] >= 1 && t[1] <= tm.m && t[2] >= 1 &&
                      t[2] <= tm.d,
                  "tree-model: illegal S triple");
        triples.insert(t);
    }

    auto root_dist = bfs(adj, index[tm.root]);
    for (int leaf : leaves)
        if (root_dist[index[leaf]] != tm.d) return fail("leaf not at depth d");

    for (std::size_t i = 0; i < leaves.size(); ++i) {
        auto dist = bfs(adj, index[leaves[i]]);
        for (std::size_t j = 0; j < leaves.size(); ++j) {
            if (i == j) continue;
            int du = dist[index[leaves[j]]];
            bool adj_claim =
                triples.count({lab[leaves[i]], lab[leaves[j]], du / 2}) > 0;
            bool adj_actual = g.has_edge(static_cast<VertexId>(leaves[i]),
                                         static_cast<VertexId>(leaves[j]));
            if (adj_claim != adj_actual) return fail("adjacency mismatch between leaves");
        }
    }
    if (why) why->clear();
    return true;
}

TreeModel make_basic_tree_model(const Graph& g) {
    TreeModel tm;
    auto verts = g.vertices();
    int root = g.capacity() == 0 ? 0 : static_cast<int>(g.capacity());
    tm.root = root;
    tm.nodes.push_back(root);
    tm.d = 1;
    tm.m = std::max<std::size_t>(verts.size(), 1);
    std::map<VertexId, int> lab;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        tm.nodes.push_back(static_cast<int>(verts[i]));
        tm.edges.emplace_back(root, static_cast<int>(verts[i]));
        tm.lambda.emplace_back(static_cast<int>(verts[i]), static_cast<int>(i + 1));
        lab[verts[i]] = static_cast<int>(i + 1);
    }
    for (auto [u, v] : g.edges()) {
        tm.s.push_back({lab[u], lab[v], 1});
        tm.s.push_back({lab[v], lab[u], 1});
    }
    return tm;
}

} // namespace pmc
