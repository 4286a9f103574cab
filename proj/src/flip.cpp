#include "pmc/flip.hpp"

#include <algorithm>

#include "json.hpp"
#include "pmc/families.hpp"

namespace pmc {

using nlohmann::json;

bool FlipSpec::has_pair(int i, int j) const {
    return pairs.count({std::min(i, j), std::max(i, j)}) > 0;
}

void FlipSpec::add_pair(int i, int j) { pairs.insert({std::min(i, j), std::max(i, j)}); }

void FlipSpec::toggle_pair(int i, int j) {
    std::pair<int, int> p{std::min(i, j), std::max(i, j)};
    if (!pairs.erase(p)) pairs.insert(p);
}

int FlipSpec::class_of_column(int col) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (std::binary_search(classes[i].begin(), classes[i].end(), col))
            return static_cast<int>(i);
    return -1;
}

std::string FlipSpec::to_json() const {
    json j;
    j["m"] = m;
    j["n"] = n;
    j["classes"] = classes;
    j["pairs"] = json::array();
    for (auto [a, b] : pairs) j["pairs"].push_back({a + 1, b + 1}); // 1-based on disk
    return j.dump();
}

FlipSpec FlipSpec::from_json(const std::string& text) try {
    json j = json::parse(text);
    FlipSpec spec;
    spec.m = j.at("m").get<int>();
    spec.n = j.at("n").get<int>();
    spec.classes = j.at("classes").get<std::vector<std::vector<int>>>();
    for (auto& cls : spec.classes) std::sort(cls.begin(), cls.end());
    for (auto& p : j.at("pairs")) {
        int a = p.at(0).get<int>() - 1, b = p.at(1).get<int>() - 1;
        PMC_CHECK(a >= 0 && b >= 0, "flip spec: pair indices are 1-based");
        spec.add_pair(a, b);
    }
    validate_flip_spec(spec);
    return spec;
} catch (const json::exception& e) {
    throw Error(std::string("flip spec json: ") + e.what());
}

void validate_flip_spec(const FlipSpec& spec) {
    PMC_CHECK(spec.m >= 1 && spec.n >= 1, "flip spec: need m, n >= 1");
    std::vector<char> covered(spec.n + 1, 0);
    for (auto& cls : spec.classes) {
        PMC_CHECK(!cls.empty(), "flip spec: empty class");
        PMC_CHECK(std::is_sorted(cls.begin(), cls.end()), "flip spec: class not sorted");
        for (int col : cls) {
            PMC_CHECK(col >= 1 && col <= spec.n, "flip spec: column out of range");
            PMC_CHECK(!covered[col], "flip spec: classes overlap");
            covered[col] = 1;
        }
    }
    int k = static_cast<int>(spec.classes.size());
    for (auto [a, b] : spec.pairs) {
        PMC_CHECK(a >= 0 && b >= 0 && a < k && b < k, "flip spec: pair class out of range");
        PMC_CHECK(a <= b, "flip spec: pair not normalized");
    }
}

void toggle_within(Graph& g, const BitRow& s) { g.apply_toggle_within(s); }
void toggle_between(Graph& g, const BitRow& s, const BitRow& t) { g.apply_toggle_between(s, t); }

BitRow class_vertices(const Graph& g, const FlipSpec& spec, int cls) {
    PMC_CHECK(cls >= 0 && static_cast<std::size_t>(cls) < spec.classes.size(),
              "class_vertices: unknown class");
    BitRow out(g.capacity());
    const auto& cols = spec.classes[cls];
    for (VertexId v : g.vertices()) {
        auto rc = g.label(v);
        if (rc && std::binary_search(cols.begin(), cols.end(), rc->col)) out.set(v);
    }
    return out;
}

Graph apply_flip(const Graph& h, const FlipSpec& spec) {
    validate_flip_spec(spec);
    PMC_CHECK(h.num_active() == static_cast<std::size_t>(spec.m) * spec.n,
              "apply_flip: vertex count differs from m*n");
    std::vector<char> filled(static_cast<std::size_t>(spec.m) * spec.n, 0);
    for (VertexId v : h.vertices()) {
        auto rc = h.label(v);
        PMC_CHECK(rc && rc->row >= 1 && rc->row <= spec.m && rc->col >= 1 && rc->col <= spec.n,
                  "apply_flip: host vertex lacks an in-range grid position label");
        auto& slot = filled[static_cast<std::size_t>(rc->row - 1) * spec.n + (rc->col - 1)];
        PMC_CHECK(!slot, "apply_flip: duplicate grid position");
        slot = 1;
    }
    Graph g = h;
    std::vector<BitRow> cls_bits;
    cls_bits.reserve(spec.classes.size());
    for (std::size_t i = 0; i < spec.classes.size(); ++i)
        cls_bits.push_back(class_vertices(g, spec, static_cast<int>(i)));
    for (auto [a, b] : spec.pairs) {
        if (a == b)
            g.apply_toggle_within(cls_bits[a]);
        else
            g.apply_toggle_between(cls_bits[a], cls_bits[b]);
    }
    return g;
}

Graph x_flip(const Graph& g, const BitRow& x) {
    PMC_CHECK(is_path(g) || g.num_active() <= 1, "x_flip: base graph must be a path");
    Graph out = g;
    out.apply_toggle_within(x);
    return out;
}

Graph x_flip(const Graph& g, std::span<const VertexId> x) {
    BitRow bits(g.capacity());
    for (VertexId v : x) bits.set(v);
    return x_flip(g, bits);
}

bool is_flip_of(const Graph& g, const FlipSpec& spec) {
    Graph h = apply_flip(grid(spec.m, spec.n), spec);
    if (g.num_active() != h.num_active()) return false;
    // h ids are dense by construction: (row-1)*n + (col-1)
    auto hid = [&](RowCol rc) -> long {
        if (rc.row < 1 || rc.row > spec.m || rc.col < 1 || rc.col > spec.n) return -1;
        return static_cast<long>(rc.row - 1) * spec.n + (rc.col - 1);
    };
    std::vector<long> hid_of_gid(g.capacity(), -1);
    BitRow seen(h.capacity());
    for (VertexId v : g.vertices()) {
        auto rc = g.label(v);
        if (!rc) return false;
        long id = hid(*rc);
        if (id < 0 || seen.test(static_cast<std::size_t>(id))) return false;
        seen.set(static_cast<std::size_t>(id));
        hid_of_gid[v] = id;
    }
    for (VertexId v : g.vertices()) {
        BitRow mapped(h.capacity());
        for (VertexId w : g.neighbors(v)) mapped.set(static_cast<std::size_t>(hid_of_gid[w]));
        if (!(mapped == h.neighbor_bits(static_cast<VertexId>(hid_of_gid[v])))) return false;
    }
    return true;
}

FlipClassesCLR flip_classes_clr(const FlipSpec& spec, int x, int xp) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(x >= 0 && x < k && xp >= 0 && xp < k && x != xp,
              "flip_classes_clr: need two distinct classes");
    FlipClassesCLR out;
    for (int z = 0; z < k; ++z) {
        bool with_x = spec.has_pair(x, z);
        bool with_xp = spec.has_pair(xp, z);
        if (with_x && with_xp)
            out.c.push_back(z);
        else if (with_x)
            out.l.push_back(z);
        else if (with_xp)
            out.r.push_back(z);
    }
    return out;
}

std::set<std::pair<int, int>> d_set(const FlipSpec& spec, int x, int xp) {
    auto clr = flip_classes_clr(spec, x, xp);
    std::set<std::pair<int, int>> out;
    auto cross = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int i : a)
            for (int j : b) out.insert({std::min(i, j), std::max(i, j)});
    };
    cross(clr.c, clr.l);
    cross(clr.c, clr.r);
    cross(clr.l, clr.r);
    return out;
}

FlipSpec restrict_flip(const FlipSpec& spec, int rows) {
    PMC_CHECK(rows >= 1 && rows <= spec.m, "restrict_flip: rows out of range");
    FlipSpec out = spec;
    out.m = rows;
    for (auto& cls : out.classes) PMC_CHECK(!cls.empty(), "restrict_flip: emptied class");
    return out;
}

FlipSpec predict_flip_after_pivot(const FlipSpec& spec, int x, int xp, int rows) {
    FlipSpec out = spec;
    for (auto& p : d_set(spec, x, xp)) out.toggle_pair(p.first, p.second);
    return restrict_flip(out, rows);
}

namespace {

// apply an old-index -> new-index map (-1 drops) to classes and pairs
FlipSpec remap_classes(const FlipSpec& spec, const std::vector<int>& new_index,
                       std::size_t new_count) {
    FlipSpec out;
    out.m = spec.m;
    out.n = spec.n;
    out.classes.resize(new_count);
    for (std::size_t z = 0; z < spec.classes.size(); ++z)
        if (new_index[z] >= 0) out.classes[new_index[z]] = spec.classes[z];
    for (auto [a, b] : spec.pairs)
        if (new_index[a] >= 0 && new_index[b] >= 0) out.add_pair(new_index[a], new_index[b]);
    return out;
}

} // namespace

FlipSpec drop_class(const FlipSpec& spec, int cls) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(cls >= 0 && cls < k, "drop_class: unknown class");
    std::vector<int> new_index(k);
    for (int z = 0; z < k; ++z) new_index[z] = z < cls ? z : z - 1;
    new_index[cls] = -1;
    return remap_classes(spec, new_index, k - 1);
}

FlipSpec restrict_columns(const FlipSpec& spec, int cols) {
    PMC_CHECK(cols >= 1 && cols <= spec.n, "restrict_columns: out of range");
    FlipSpec trimmed = spec;
    trimmed.n = cols;
    std::vector<int> new_index(spec.classes.size(), -1);
    std::size_t next = 0;
    for (std::size_t z = 0; z < trimmed.classes.size(); ++z) {
        auto& cls = trimmed.classes[z];
        cls.erase(std::remove_if(cls.begin(), cls.end(), [&](int c) { return c > cols; }),
                  cls.end());
        if (!cls.empty()) new_index[z] = static_cast<int>(next++);
    }
    FlipSpec out = remap_classes(trimmed, new_index, next);
    validate_flip_spec(out);
    return out;
}

FlipSpec merge_classes(const FlipSpec& spec, int i, int j,
                       const std::set<std::pair<int, int>>& base_pairs,
                       const std::vector<bool>& keep_with) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(i >= 0 && j >= 0 && i < k && j < k && i != j, "merge_classes: bad indices");
    int lo = std::min(i, j), hi = std::max(i, j);
    std::vector<int> new_index(k);
    for (int z = 0; z < k; ++z) new_index[z] = z < hi ? z : z - 1;
    new_index[i] = new_index[j] = lo;

    FlipSpec out;
    out.m = spec.m;
    out.n = spec.n;
    out.classes.resize(k - 1);
    for (int z = 0; z < k; ++z)
        if (z != i && z != j) out.classes[new_index[z]] = spec.classes[z];
    std::vector<int> merged = spec.classes[i];
    merged.insert(merged.end(), spec.classes[j].begin(), spec.classes[j].end());
    std::sort(merged.begin(), merged.end());
    out.classes[lo] = std::move(merged);

    for (auto [a, b] : base_pairs)
        if (a != i && a != j && b != i && b != j) out.add_pair(new_index[a], new_index[b]);
    out.add_pair(lo, lo);
    for (int z = 0; z < k; ++z)
        if (z != i && z != j && keep_with[z]) out.add_pair(lo, new_index[z]);
    validate_flip_spec(out);
    return out;
}

std::optional<BitRow> recognize_one_flip_of_path(const Graph& g) {
    std::size_t n = g.num_active();
    if (n > 12) throw SizeLimitError("recognize_one_flip_of_path: above the 12-vertex bound");
    auto verts = g.vertices();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        BitRow x(g.capacity());
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) x.set(verts[i]);
        Graph h = g;
        h.apply_toggle_within(x);
        if (is_path(h)) return x;
    }
    return std::nullopt;
}

bool verify_one_flip_of_path(const Graph& g, const BitRow& x) {
    Graph h = g;
    h.apply_toggle_within(x);
    return is_path(h);
}

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
    PMC_CHECK(bound > 0, "rand_below: zero bound");
    std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

FlipSpec random_flip_spec(std::mt19937_64& rng, int m, int n) {
    PMC_CHECK(m >= 1 && n >= 1, "random_flip_spec: need m, n >= 1");
    FlipSpec spec;
    spec.m = m;
    spec.n = n;
    auto k_target = static_cast<int>(1 + rand_below(rng, static_cast<std::uint64_t>(n)));
    std::vector<std::vector<int>> buckets(k_target);
    for (int col = 1; col <= n; ++col) {
        auto v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(k_target) + 1));
        if (v < k_target) buckets[v].push_back(col); // v == k_target leaves col uncovered
    }
    for (auto& b : buckets)
        if (!b.empty()) spec.classes.push_back(std::move(b));
    int k = static_cast<int>(spec.classes.size());
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            if (rand_below(rng, 2) == 1) spec.add_pair(i, j);
    validate_flip_spec(spec);
    return spec;
}

} // namespace pmc
